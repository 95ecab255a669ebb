//! The three unimodular equations `|L_i|^2 = nr` for `W = I + xA1 + yA2 + zA3`.

use num_complex::Complex64;

use super::params::CoverParams;

/// Coefficients of `(1, x, y, z)` in `L1`, `L2`, `L3`.
pub fn coefficients(p: &CoverParams) -> [[f64; 4]; 3] {
    let r1 = p.r as f64 - 1.0;
    let (th, ta) = (p.theta_f64(), p.tau_f64());
    [[1.0, -1.0, -r1, r1], [1.0, th, -th, -1.0], [1.0, ta, -ta, -1.0]]
}

/// `(|L1|^2 - nr, |L2|^2 - nr, |L3|^2 - nr)`, using `1/w = conj(w)`.
pub fn system_residual(p: &CoverParams, x: Complex64, y: Complex64, z: Complex64) -> [f64; 3] {
    let nr = (p.n * p.r) as f64;
    coefficients(p).map(|k| {
        let l = k[0] + x * k[1] + y * k[2] + z * k[3];
        let lbar = k[0] + x.conj() * k[1] + y.conj() * k[2] + z.conj() * k[3];
        (l * lbar).re - nr
    })
}

/// The three right-hand sides written out term by term, evaluated with true division.
///
/// On the torus each equals `|L_i|^2`.
pub fn expanded_form(p: &CoverParams, x: Complex64, y: Complex64, z: Complex64) -> [f64; 3] {
    let r1 = p.r as f64 - 1.0;
    let s = |w: Complex64| (w + w.inv()).re;
    let e1 = 2.0 + 2.0 * r1 * r1 - s(x) - r1 * s(y) + r1 * s(z) + r1 * s(y / x) - r1 * s(x / z) - r1 * r1 * s(z / y);
    let e = |t: f64| 2.0 + 2.0 * t * t + t * s(x) - t * s(y) - s(z) - t * t * s(y / x) - t * s(z / x) + t * s(z / y);
    [e1, e(p.theta_f64()), e(p.tau_f64())]
}

/// Residuals and their angle derivatives, from the cosine form
/// `|L|^2 = sum k_p^2 + 2 sum_{p<q} k_p k_q cos(φ_p - φ_q)` with `φ_0 = 0`.
pub(crate) struct AngleSystem {
    k: [[f64; 4]; 3],
    nr: f64,
}

impl AngleSystem {
    pub fn new(p: &CoverParams) -> Self {
        AngleSystem { k: coefficients(p), nr: (p.n * p.r) as f64 }
    }

    pub fn residual(&self, phi: &[f64; 3]) -> [f64; 3] {
        let a = [0.0, phi[0], phi[1], phi[2]];
        self.k.map(|k| {
            let mut f = k.iter().map(|c| c * c).sum::<f64>() - self.nr;
            for p in 0..4 {
                for q in p + 1..4 {
                    f += 2.0 * k[p] * k[q] * (a[p] - a[q]).cos();
                }
            }
            f
        })
    }

    /// `J[i][m] = dF_i/dφ_m`.
    pub fn jacobian(&self, phi: &[f64; 3]) -> [[f64; 3]; 3] {
        let a = [0.0, phi[0], phi[1], phi[2]];
        self.k.map(|k| {
            let mut row = [0.0; 3];
            for m in 1..4 {
                for q in 0..4 {
                    if q != m {
                        row[m - 1] -= 2.0 * k[m] * k[q] * (a[m] - a[q]).sin();
                    }
                }
            }
            row
        })
    }

    /// `H[i][m][l] = d^2F_i / dφ_m dφ_l`.
    pub fn hessians(&self, phi: &[f64; 3]) -> [[[f64; 3]; 3]; 3] {
        let a = [0.0, phi[0], phi[1], phi[2]];
        self.k.map(|k| {
            let mut h = [[0.0; 3]; 3];
            for m in 1..4 {
                for l in 1..4 {
                    h[m - 1][l - 1] = if l == m {
                        -(0..4).filter(|&q| q != m).map(|q| 2.0 * k[m] * k[q] * (a[m] - a[q]).cos()).sum::<f64>()
                    } else {
                        2.0 * k[m] * k[l] * (a[m] - a[l]).cos()
                    };
                }
            }
            h
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_match_finite_differences() {
        let p = CoverParams::new(5, 3, 1).unwrap();
        let s = AngleSystem::new(&p);
        let phi = [0.3, -1.1, 2.0];
        let j = s.jacobian(&phi);
        let h = s.hessians(&phi);
        let eps = 1e-6;
        for m in 0..3 {
            let mut hi = phi;
            hi[m] += eps;
            let mut lo = phi;
            lo[m] -= eps;
            let (fh, fl) = (s.residual(&hi), s.residual(&lo));
            let (jh, jl) = (s.jacobian(&hi), s.jacobian(&lo));
            for i in 0..3 {
                assert!(((fh[i] - fl[i]) / (2.0 * eps) - j[i][m]).abs() < 1e-6);
                for l in 0..3 {
                    assert!(((jh[i][l] - jl[i][l]) / (2.0 * eps) - h[i][l][m]).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn angle_form_agrees_with_complex_form() {
        let p = CoverParams::new(4, 2, 2).unwrap();
        let phi = [0.7, 2.9, -0.4];
        let [x, y, z] = phi.map(|t| Complex64::from_polar(1.0, t));
        let a = AngleSystem::new(&p).residual(&phi);
        let b = system_residual(&p, x, y, z);
        for i in 0..3 {
            assert!((a[i] - b[i]).abs() < 1e-12);
        }
    }
}
