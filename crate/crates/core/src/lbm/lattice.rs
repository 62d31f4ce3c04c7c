//! D2Q9 lattice constants and the BGK equilibrium.

use crate::error::{Error, Result};

pub const Q: usize = 9;

/// Discrete velocities: rest, the four axis directions, then the diagonals.
pub const E: [(i32, i32); Q] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (-1, 0),
    (0, -1),
    (1, 1),
    (-1, 1),
    (-1, -1),
    (1, -1),
];

pub const W: [f64; Q] = [
    4.0 / 9.0,
    1.0 / 9.0,
    1.0 / 9.0,
    1.0 / 9.0,
    1.0 / 9.0,
    1.0 / 36.0,
    1.0 / 36.0,
    1.0 / 36.0,
    1.0 / 36.0,
];

/// Index of the reversed direction.
pub const OPP: [usize; Q] = [0, 3, 4, 1, 2, 7, 8, 5, 6];

/// Squared lattice sound speed.
pub const CS2: f64 = 1.0 / 3.0;

pub fn sound_speed() -> f64 {
    CS2.sqrt()
}

/// Kinematic viscosity for relaxation time `tau`.
pub fn viscosity(tau: f64) -> f64 {
    (tau - 0.5) / 3.0
}

pub fn equilibrium(rho: f64, v: [f64; 2]) -> Result<[f64; Q]> {
    if !(rho > 0.0) {
        return Err(Error::Domain(format!("density must be positive, got {rho}")));
    }
    Ok(equilibrium_unchecked(rho, v[0], v[1]))
}

#[inline]
pub(crate) fn equilibrium_unchecked(rho: f64, vx: f64, vy: f64) -> [f64; Q] {
    let usq = 1.5 * (vx * vx + vy * vy);
    let mut f = [0.0; Q];
    for i in 0..Q {
        let eu = E[i].0 as f64 * vx + E[i].1 as f64 * vy;
        f[i] = W[i] * rho * (1.0 + 3.0 * eu + 4.5 * eu * eu - usq);
    }
    f
}

/// Density and velocity of a set of distributions.
#[inline]
pub fn moments(f: &[f64]) -> (f64, f64, f64) {
    let rho = f[0] + f[1] + f[2] + f[3] + f[4] + f[5] + f[6] + f[7] + f[8];
    let jx = f[1] - f[3] + f[5] - f[6] - f[7] + f[8];
    let jy = f[2] - f[4] + f[5] + f[6] - f[7] - f[8];
    if rho > 0.0 {
        (rho, jx / rho, jy / rho)
    } else {
        (rho, 0.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_one_and_opposites_reverse() {
        assert!((W.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert_eq!(E[0], (0, 0));
        for i in 0..Q {
            assert_eq!(E[OPP[i]], (-E[i].0, -E[i].1));
        }
    }

    #[test]
    fn rest_equilibrium_is_weights() {
        assert_eq!(equilibrium(1.0, [0.0, 0.0]).unwrap(), W);
    }

    #[test]
    fn moments_of_equilibrium() {
        let f = equilibrium(1.0, [0.05, 0.0]).unwrap();
        let jx: f64 = (0..Q).map(|i| f[i] * E[i].0 as f64).sum();
        let jy: f64 = (0..Q).map(|i| f[i] * E[i].1 as f64).sum();
        assert!((jx - 0.05).abs() < 1e-14 && jy.abs() < 1e-14);
        let (rho, vx, _) = moments(&f);
        assert!((rho - 1.0).abs() < 1e-14 && (vx - 0.05).abs() < 1e-14);
    }

    #[test]
    fn bad_density() {
        assert!(equilibrium(0.0, [0.0, 0.0]).is_err());
    }

    #[test]
    fn viscosity_at_unit_tau() {
        assert!((viscosity(1.0) - 1.0 / 6.0).abs() < 1e-16);
        assert!((sound_speed() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }
}
