#pragma once

#include <optional>

namespace cptsq {

/// Physical constants of the cavity + Lambda-atom model.
///
/// All rates are in units of the optical dipole decay rate gamma, which is
/// therefore 1 unless a caller wants dimensional Rabi frequencies back.
/// Mode 1 sees cavity detuning +kappa*phi and atomic detuning -delta_bar,
/// mode 2 the opposite signs.
struct SystemParams {
    double C = 100.0;          ///< cooperativity g^2 N / (2 kappa gamma)
    double gamma = 1.0;
    double kappa = 2.0;        ///< cavity amplitude decay rate
    double phi = 0.0;          ///< normalized cavity detuning
    double delta_bar = 0.0;    ///< two-photon half-detuning delta/gamma
    double gamma0 = 0.0;       ///< ground-state coherence decay rate
    std::optional<double> N;   ///< atom number, only used to denormalize spins

    /// Throws InvalidArgument on non-finite fields or C < 0, gamma <= 0,
    /// kappa <= 0, gamma0 < 0, N <= 0. C == 0 is the empty cavity.
    void validate() const;

    double atom_number() const { return N.value_or(1.0); }
};

}  // namespace cptsq
