//! Curvature `R_∇ = ∇²`, Ricci and scalar curvature.

use crate::calculus::{d1, wedge1, OneForm, TensorSquare, TwoForm};
use crate::error::{NcgError, Result};
use crate::koszul::{Connection, Metric};
use crate::linalg::{c, epsilon, ComplexMatrix, C64};
use crate::triple::SpectralTriple;

/// `R_∇(e_j) = Σ_pq e_p ⊗ f_q r[j][p][q]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    pub r: [[[ComplexMatrix; 3]; 3]; 3],
}

/// The two pieces of `R_∇(e_j) = Σ_p e_p ⊗ (Σ_k ω_pk ∧ ω_kj + d ω_pj)`,
/// each indexed `[p][j]`.
#[derive(Clone, Debug)]
pub struct CurvatureTerms {
    pub omega_wedge_omega: [[TwoForm; 3]; 3],
    pub d_omega: [[TwoForm; 3]; 3],
}

pub fn curvature_terms(t: &SpectralTriple, conn: &Connection) -> CurvatureTerms {
    let omega = conn.connection_forms();
    let dim = conn.dim();
    let omega_wedge_omega = std::array::from_fn(|p| {
        std::array::from_fn(|j| {
            (0..3).fold(TwoForm::zero(dim), |acc, k| {
                &acc + &wedge1(&omega[p][k], &omega[k][j])
            })
        })
    });
    let d_omega = std::array::from_fn(|p| std::array::from_fn(|j| d1(t, &omega[p][j])));
    CurvatureTerms {
        omega_wedge_omega,
        d_omega,
    }
}

pub fn curvature(t: &SpectralTriple, conn: &Connection) -> CurvatureTensor {
    let terms = curvature_terms(t, conn);
    CurvatureTensor {
        r: std::array::from_fn(|j| {
            std::array::from_fn(|p| {
                std::array::from_fn(|q| {
                    &terms.omega_wedge_omega[p][j].coords[q] + &terms.d_omega[p][j].coords[q]
                })
            })
        }),
    }
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.r[0][0][0].rows()
    }

    /// `R_∇(e_j)` as `[θ_p]` with `R_∇(e_j) = Σ_p e_p ⊗ θ_p`.
    pub fn on_basis(&self, j: usize) -> [TwoForm; 3] {
        std::array::from_fn(|p| TwoForm::new(self.r[j][p].clone()))
    }

    /// Right-linear extension: `R(Σ e_j a_j) = Σ R(e_j) a_j`.
    pub fn apply(&self, x: &OneForm) -> [TwoForm; 3] {
        let dim = self.dim();
        std::array::from_fn(|p| {
            (0..3).fold(TwoForm::zero(dim), |acc, j| {
                &acc + &TwoForm::new(self.r[j][p].clone()).right_mul(&x.coords[j])
            })
        })
    }

    pub fn scalar_coeffs(&self) -> ([[[C64; 3]; 3]; 3], f64) {
        let mut dev: f64 = 0.0;
        let z = std::array::from_fn(|j| {
            std::array::from_fn(|p| {
                std::array::from_fn(|q| {
                    dev = dev.max(self.r[j][p][q].scalar_deviation());
                    self.r[j][p][q].scalar_part()
                })
            })
        });
        (z, dev)
    }

    pub fn max_abs(&self) -> f64 {
        self.r
            .iter()
            .flatten()
            .flatten()
            .map(ComplexMatrix::max_abs)
            .fold(0.0, f64::max)
    }
}

/// `∇²(x)` applied directly: with `∇(x) = Σ_p e_p ⊗ θ_p`,
/// `∇²(x) = Σ_p ∇(e_p) ∧ θ_p + e_p ⊗ dθ_p`, returned as `[Σ-coefficient of e_p]`.
pub fn nabla_squared(t: &SpectralTriple, conn: &Connection, x: &OneForm) -> [TwoForm; 3] {
    let dim = x.dim();
    let first = conn.apply(t, x);
    let theta: [OneForm; 3] = std::array::from_fn(|p| OneForm::new(first.coords[p].clone()));
    let omega = conn.connection_forms();
    let mut out: [TwoForm; 3] = std::array::from_fn(|_| TwoForm::zero(dim));
    for p in 0..3 {
        // ∇(e_p) ∧ θ_p = Σ_k e_k ⊗ (ω_kp ∧ θ_p)
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = &*slot + &wedge1(&omega[k][p], &theta[p]);
        }
        out[p] = &out[p] + &d1(t, &theta[p]);
    }
    out
}

/// `êv(f_q ⊗ ψ_m) = Σ_j ε_qjm e_j`, extended right-linearly in the coefficient.
///
/// On the wedge basis this is `êv((e_j ∧ e_k) ⊗ ψ_m) = e_j δ_mk - e_k δ_mj`.
pub fn evhat(w: &TwoForm, m: usize) -> OneForm {
    let dim = w.dim();
    let mut out = OneForm::zero(dim);
    for q in 0..3 {
        for j in 0..3 {
            let e = epsilon(q, j, m);
            if e != 0.0 {
                out.coords[j] += &w.coords[q].scale(c(e, 0.0));
            }
        }
    }
    out
}

/// `e_j ∧ e_k` as a two-form.
pub fn wedge_basis(dim: usize, j: usize, k: usize) -> TwoForm {
    wedge1(&OneForm::basis(dim, j), &OneForm::basis(dim, k))
}

/// `Ric = (id ⊗ êv)(Σ_j R(e_j) ⊗ ψ_j)`.
pub fn ricci(rt: &CurvatureTensor) -> TensorSquare {
    let dim = rt.dim();
    let mut out = TensorSquare::zero(dim);
    for j in 0..3 {
        for (p, theta) in rt.on_basis(j).iter().enumerate() {
            let ev = evhat(theta, j);
            for l in 0..3 {
                out.coords[p][l] += &ev.coords[l];
            }
        }
    }
    out
}

/// `Scal = Σ_kj r_kj G_kj`, defined only when every `r_kj` is central.
pub fn scalar_curvature(ric: &TensorSquare, m: &Metric, tol: f64) -> Result<C64> {
    let mut total = C64::new(0.0, 0.0);
    for k in 0..3 {
        for j in 0..3 {
            let r = &ric.coords[k][j];
            let deviation = r.scalar_deviation();
            if deviation > tol {
                return Err(NcgError::NonCentralRicci {
                    row: k,
                    col: j,
                    deviation,
                });
            }
            total += r.scalar_part() * m.get(k, j);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::{grassmann_connection, levi_civita};
    use crate::linalg::{ONE, ZERO};
    use crate::triple::build_triple;

    #[test]
    fn evhat_examples() {
        let e = |k| OneForm::basis(1, k);
        assert_eq!(evhat(&wedge_basis(1, 0, 1), 1), e(0));
        assert_eq!(evhat(&wedge_basis(1, 0, 1), 2), OneForm::zero(1));
        for p in 0..3 {
            let total = (0..3).fold(OneForm::zero(1), |acc, j| {
                &acc + &evhat(&wedge_basis(1, p, j), j)
            });
            assert_eq!(total, e(p).scale(c(2.0, 0.0)));
        }
    }

    #[test]
    fn evhat_respects_antisymmetry() {
        for j in 0..3 {
            for k in 0..3 {
                for m in 0..3 {
                    let lhs = evhat(&wedge_basis(1, j, k), m);
                    let rhs = -evhat(&wedge_basis(1, k, j), m);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn flat_connection_has_no_curvature() {
        let t = build_triple(1);
        let rt = curvature(&t, &grassmann_connection(4));
        assert_eq!(rt.max_abs(), 0.0);
        assert_eq!(ricci(&rt).max_abs(), 0.0);
        assert_eq!(
            scalar_curvature(&ricci(&rt), &Metric::canonical(), 1e-10).unwrap(),
            ZERO
        );
    }

    #[test]
    fn canonical_curvature_and_ricci() {
        let t = build_triple(1);
        let lc = levi_civita(&t, &Metric::canonical()).unwrap();
        let (r, dev) = curvature(&t, &lc).scalar_coeffs();
        assert!(dev < 1e-14);
        for j in 0..3 {
            for p in 0..3 {
                for q in 0..3 {
                    assert!((r[j][p][q] + c(0.25 * epsilon(j, p, q), 0.0)).norm() < 1e-12);
                }
            }
        }
        let ric = ricci(&curvature(&t, &lc));
        let (z, dev) = ric.scalar_coords();
        assert!(dev < 1e-14);
        for p in 0..3 {
            for l in 0..3 {
                let expected = if p == l { 0.5 } else { 0.0 };
                assert!((z[p][l] - c(expected, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn non_central_ricci_is_reported() {
        let mut ric = TensorSquare::from_scalars(2, [[ONE; 3]; 3]);
        ric.coords[1][2] = ComplexMatrix::unit(2, 0, 1);
        let err = scalar_curvature(&ric, &Metric::canonical(), 1e-10).unwrap_err();
        assert!(matches!(
            err,
            NcgError::NonCentralRicci { row: 1, col: 2, .. }
        ));
    }
}
