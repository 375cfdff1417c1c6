//! Two-component states and 2x2 unitaries in the `{|up>, |down>}` basis.

use std::ops::Mul;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;

/// Normalized qubit state `up |up> + down |down>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitState {
    up: C64,
    down: C64,
}

impl QubitState {
    pub const UP: Self = Self {
        up: C64::new(1.0, 0.0),
        down: C64::new(0.0, 0.0),
    };
    pub const DOWN: Self = Self {
        up: C64::new(0.0, 0.0),
        down: C64::new(1.0, 0.0),
    };

    /// Builds a state, rejecting amplitudes whose squared norm is not 1
    /// within `1e-12`.
    pub fn new(up: C64, down: C64) -> Result<Self> {
        let norm = up.norm_sqr() + down.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Domain(format!("state norm^2 is {norm}, expected 1")));
        }
        Ok(Self { up, down })
    }

    /// Builds a state by normalizing arbitrary non-zero amplitudes.
    pub fn normalized(up: C64, down: C64) -> Result<Self> {
        let norm = (up.norm_sqr() + down.norm_sqr()).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Domain(
                "cannot normalize a zero or non-finite state".into(),
            ));
        }
        Ok(Self {
            up: up / norm,
            down: down / norm,
        })
    }

    pub fn up(&self) -> C64 {
        self.up
    }

    pub fn down(&self) -> C64 {
        self.down
    }

    pub fn p_up(&self) -> f64 {
        self.up.norm_sqr()
    }

    pub fn p_down(&self) -> f64 {
        self.down.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        (self.up.norm_sqr() + self.down.norm_sqr()).sqrt()
    }

    pub fn overlap(&self, other: &Self) -> C64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }
}

/// 2x2 complex matrix that is unitary up to rounding.
///
/// Constructors other than [`Unitary2::from_entries`] produce unitaries by
/// construction; `from_entries` trusts the caller and is used where an
/// exactly unitary closed form is assembled entry by entry.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Unitary2 {
    pub u11: C64,
    pub u12: C64,
    pub u21: C64,
    pub u22: C64,
}

impl Unitary2 {
    pub const IDENTITY: Self = Self {
        u11: C64::new(1.0, 0.0),
        u12: C64::new(0.0, 0.0),
        u21: C64::new(0.0, 0.0),
        u22: C64::new(1.0, 0.0),
    };

    pub fn from_entries(u11: C64, u12: C64, u21: C64, u22: C64) -> Self {
        Self { u11, u12, u21, u22 }
    }

    /// `diag(e^{-i alpha}, e^{+i alpha})`.
    pub fn z_phase(alpha: f64) -> Self {
        Self {
            u11: C64::from_polar(1.0, -alpha),
            u12: C64::new(0.0, 0.0),
            u21: C64::new(0.0, 0.0),
            u22: C64::from_polar(1.0, alpha),
        }
    }

    /// `[[cos(z/2), sin(z/2) e^{i phi}], [-sin(z/2) e^{-i phi}, cos(z/2)]]`,
    /// a rotation by `zeta` about an axis in the xy-plane.
    pub fn xy_rotation(zeta: f64, phi: f64) -> Self {
        let (s, c) = (0.5 * zeta).sin_cos();
        Self {
            u11: C64::new(c, 0.0),
            u12: C64::from_polar(s, phi),
            u21: -C64::from_polar(s, -phi),
            u22: C64::new(c, 0.0),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            u11: self.u11.conj(),
            u12: self.u21.conj(),
            u21: self.u12.conj(),
            u22: self.u22.conj(),
        }
    }

    pub fn det(&self) -> C64 {
        self.u11 * self.u22 - self.u12 * self.u21
    }

    pub fn trace(&self) -> C64 {
        self.u11 + self.u22
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            u11: self.u11 * factor,
            u12: self.u12 * factor,
            u21: self.u21 * factor,
            u22: self.u22 * factor,
        }
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.u11, self.u12, self.u21, self.u22]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation of `U^dagger U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::IDENTITY)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol && (self.det().norm() - 1.0).abs() <= tol
    }

    pub fn apply(&self, psi: &QubitState) -> QubitState {
        *self * *psi
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        Unitary2 {
            u11: self.u11 * rhs.u11 + self.u12 * rhs.u21,
            u12: self.u11 * rhs.u12 + self.u12 * rhs.u22,
            u21: self.u21 * rhs.u11 + self.u22 * rhs.u21,
            u22: self.u21 * rhs.u12 + self.u22 * rhs.u22,
        }
    }
}

impl Mul<QubitState> for Unitary2 {
    type Output = QubitState;

    fn mul(self, psi: QubitState) -> QubitState {
        QubitState {
            up: self.u11 * psi.up + self.u12 * psi.down,
            down: self.u21 * psi.up + self.u22 * psi.down,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_normalization_is_checked() {
        assert!(QubitState::new(C64::new(1.0, 0.0), C64::new(1.0, 0.0)).is_err());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = QubitState::new(C64::new(h, 0.0), C64::new(0.0, h)).unwrap();
        assert!((s.p_up() - 0.5).abs() < 1e-15);
        assert!(QubitState::normalized(C64::new(0.0, 0.0), C64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn constructed_unitaries_are_unitary() {
        for &(z, p) in &[(0.0, 0.0), (0.3, 1.2), (3.0, -2.0)] {
            let u = Unitary2::xy_rotation(z, p) * Unitary2::z_phase(p - z);
            assert!(u.is_unitary(1e-14));
            assert!((u.det() - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn adjoint_inverts() {
        let u = Unitary2::xy_rotation(1.1, 0.4) * Unitary2::z_phase(0.9);
        let id = u * u.adjoint();
        assert!(id.max_abs_diff(&Unitary2::IDENTITY) < 1e-15);
    }
}
