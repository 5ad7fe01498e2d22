//! Brute-force universal-forms oracle.
//!
//! Every universal one-form is a combination of `a db` with `a, b` matrix
//! units. Its images `π(a db) = a[D, b]` and `π(da db) = [D, a][D, b]` are
//! stacked as one row `[π₁ | π₂]` per pair, and everything else follows
//! from the row space `W` of that matrix:
//!
//! * `dim Ω¹` is the rank of the `π₁` half,
//! * junk is `{ w₂ : (0, w₂) ∈ W }`,
//! * `d` on a one-form `x` is `w₂` for any `(x, w₂) ∈ W`, taken modulo junk.
//!
//! There are `(dim A)²` pairs, so the row space is estimated from a seeded
//! Gaussian sketch before the SVD.

use rayon::prelude::*;

use super::{two_form_symbols, OneForm, TwoForm};
use crate::error::{NcgError, Result};
use crate::linalg::{
    c, kron, least_squares, nullspace_basis, row_space_basis, ComplexMatrix, SparseRows, C64, ZERO,
};
use crate::triple::{Orientation, SpectralTriple};

/// Cutoffs above this are refused unless the caller raises the cap.
pub const DEFAULT_ORACLE_CAP: usize = 2;

const SKETCH_SEED: u64 = 0x6a75_6e6b;

/// Relative residual above which a one-form is declared outside `π(Ω¹_u)`.
const REPRESENTATION_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct FormOracle {
    dim_h: usize,
    one_form_rank: usize,
    /// Orthonormal rows spanning `W`, split as `[b1 | b2]`.
    b1: ComplexMatrix,
    b2: ComplexMatrix,
    /// Orthonormal rows spanning the junk two-forms.
    junk: ComplexMatrix,
    tol: f64,
}

fn check_cap(t: &SpectralTriple, cap: usize) -> Result<()> {
    if t.n > cap {
        Err(NcgError::Feasibility { n: t.n, cap })
    } else {
        Ok(())
    }
}

/// `½ tr₂`, the `Y` in `Z ≈ Y ⊗ 1`.
pub fn partial_trace_c2(z: &ComplexMatrix) -> ComplexMatrix {
    let d = z.rows() / 2;
    ComplexMatrix::from_fn(d, d, |i, j| {
        (z[(2 * i, 2 * j)] + z[(2 * i + 1, 2 * j + 1)]) * 0.5
    })
}

fn unvec(v: &[C64], h: usize) -> ComplexMatrix {
    ComplexMatrix::from_vec(h, h, v.to_vec()).expect("square operator")
}

impl FormOracle {
    pub fn new(t: &SpectralTriple, cap: usize, tol: f64) -> Result<Self> {
        check_cap(t, cap)?;
        let n = t.dim_k;
        let h = t.dim_h();
        let hh = h * h;

        // [D, E_rs ⊗ 1] for every matrix unit.
        let commutators: Vec<ComplexMatrix> = (0..n * n)
            .into_par_iter()
            .map(|rs| {
                let e = ComplexMatrix::unit(n, rs / n, rs % n);
                t.dirac.commutator(&t.represent(&e))
            })
            .collect();

        // One block of rows per left factor E_pq; collected in index order.
        let blocks: Vec<Vec<Vec<C64>>> = (0..n * n)
            .into_par_iter()
            .map(|pq| {
                let (p, q) = (pq / n, pq % n);
                (0..n * n)
                    .map(|rs| {
                        let db = &commutators[rs];
                        let mut row = vec![ZERO; 2 * hh];
                        // (E_pq ⊗ 1)[D, b] keeps rows 2p, 2p+1 of [D, b] taken from rows 2q, 2q+1.
                        for s in 0..2 {
                            for col in 0..h {
                                row[(2 * p + s) * h + col] = db[(2 * q + s, col)];
                            }
                        }
                        let da_db = commutators[pq].matmul(db);
                        row[hh..].copy_from_slice(da_db.as_slice());
                        row
                    })
                    .collect()
            })
            .collect();
        let mut rows = SparseRows::new(2 * hh);
        for block in &blocks {
            for row in block {
                rows.push_dense(row);
            }
        }

        let compressed = rows.compress(SKETCH_SEED);
        let w = row_space_basis(&compressed, tol);
        let r = w.rows();
        let b1 = ComplexMatrix::from_fn(r, hh, |i, j| w[(i, j)]);
        let b2 = ComplexMatrix::from_fn(r, hh, |i, j| w[(i, hh + j)]);
        let one_form_rank = crate::linalg::numerical_rank(&b1, tol);

        // Coefficient vectors c with c·b1 = 0, i.e. b1ᵀ cᵀ = 0.
        let kernel = nullspace_basis(&b1.transpose(), tol);
        let junk = if kernel.is_empty() {
            ComplexMatrix::zeros(0, hh)
        } else {
            let cmat = ComplexMatrix::from_rows(&kernel);
            row_space_basis(&cmat.matmul(&b2), tol)
        };

        Ok(Self {
            dim_h: h,
            one_form_rank,
            b1,
            b2,
            junk,
            tol,
        })
    }

    /// Dimension of `Ω¹ = span{ a[D, b] }`.
    pub fn one_form_dim(&self) -> usize {
        self.one_form_rank
    }

    pub fn junk_dim(&self) -> usize {
        self.junk.rows()
    }

    pub fn junk_basis(&self) -> Vec<ComplexMatrix> {
        (0..self.junk.rows())
            .map(|i| unvec(self.junk.row(i), self.dim_h))
            .collect()
    }

    /// Orthogonal projection onto the junk span.
    pub fn project_onto_junk(&self, z: &ComplexMatrix) -> ComplexMatrix {
        let v = z.as_slice();
        let mut out = vec![ZERO; v.len()];
        for i in 0..self.junk.rows() {
            let b = self.junk.row(i);
            let coeff: C64 = b.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
            for (o, &bj) in out.iter_mut().zip(b) {
                *o += coeff * bj;
            }
        }
        unvec(&out, self.dim_h)
    }

    /// Max over the junk basis of `‖Z - (½ tr₂ Z) ⊗ 1‖`.
    pub fn identification_residual(&self) -> f64 {
        let id2 = ComplexMatrix::identity(2);
        self.junk_basis()
            .iter()
            .map(|z| z.max_abs_diff(&kron(&partial_trace_c2(z), &id2)))
            .fold(0.0, f64::max)
    }

    /// `d x` computed from `D` alone: represent `x` as `Σ a_j [D, b_j]`, take
    /// `Σ [D, a_j][D, b_j]`, discard junk and read off the `f_m` coefficients.
    pub fn d(&self, t: &SpectralTriple, x: &OneForm) -> Result<TwoForm> {
        self.d_with_junk(t, x).map(|(w, _)| w)
    }

    /// As [`FormOracle::d`], also returning the junk component that was removed.
    pub fn d_with_junk(&self, t: &SpectralTriple, x: &OneForm) -> Result<(TwoForm, ComplexMatrix)> {
        let target = x.operator(t);
        let scale = target.frobenius_norm().max(1.0);
        let (coeffs, residual) = least_squares(&self.b1.transpose(), target.as_slice(), self.tol)?;
        if residual > REPRESENTATION_TOL * scale {
            return Err(NcgError::Representation {
                residual: residual / scale,
            });
        }
        let z_vec: Vec<C64> = (0..self.b2.cols())
            .map(|j| {
                (0..self.b2.rows())
                    .map(|i| coeffs[i] * self.b2[(i, j)])
                    .sum()
            })
            .collect();
        let z = unvec(&z_vec, self.dim_h);
        let junk_part = self.project_onto_junk(&z);
        let reduced = &z - &junk_part;
        let symbols = two_form_symbols(t);
        let id = ComplexMatrix::identity(t.dim_k);
        let coords = std::array::from_fn(|m| {
            let probe = kron(&id, &symbols[m].adjoint());
            partial_trace_c2(&reduced.matmul(&probe))
        });
        Ok((TwoForm::new(coords), junk_part))
    }
}

/// Orthonormal basis of the junk two-forms as operators on `H_N`.
pub fn junk_space(t: &SpectralTriple, cap: usize) -> Result<Vec<ComplexMatrix>> {
    Ok(FormOracle::new(t, cap, crate::linalg::DEFAULT_TOL)?.junk_basis())
}

/// `d e_m` through the oracle.
pub fn de_oracle(t: &SpectralTriple, m: usize, cap: usize) -> Result<TwoForm> {
    let oracle = FormOracle::new(t, cap, crate::linalg::DEFAULT_TOL)?;
    oracle.d(t, &OneForm::basis(t.dim_k, m))
}

/// `dim span{ (a ⊗ 1)[D, b ⊗ 1] }` over matrix units `a, b`.
pub fn one_form_span_check(t: &SpectralTriple, cap: usize) -> Result<usize> {
    check_cap(t, cap)?;
    let n = t.dim_k;
    let h = t.dim_h();
    let mut rows = SparseRows::new(h * h);
    for rs in 0..n * n {
        let e = ComplexMatrix::unit(n, rs / n, rs % n);
        let db = t.dirac.commutator(&t.represent(&e));
        for pq in 0..n * n {
            let a = t.represent(&ComplexMatrix::unit(n, pq / n, pq % n));
            rows.push_dense(a.matmul(&db).as_slice());
        }
    }
    Ok(rows.rank(crate::linalg::DEFAULT_TOL, SKETCH_SEED))
}

/// Sign of `d e_1` at `N = 1` measured by the oracle: `Standard` when it
/// comes out as `-f_1`, `Flipped` when it comes out as `+f_1`.
pub fn detect_orientation() -> Result<Orientation> {
    let t = crate::triple::build_triple(1);
    let w = de_oracle(&t, 0, 1)?;
    let coeff = w.coords[0].scalar_part().re;
    Ok(if coeff > 0.0 {
        Orientation::Flipped
    } else {
        Orientation::Standard
    })
}

/// Max residual of the `f_m` symbols being unitary and mutually orthogonal.
pub fn symbol_orthogonality_residual(t: &SpectralTriple) -> f64 {
    let s = two_form_symbols(t);
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let ip = s[i].inner(&s[j]);
            let expected = if i == j { c(2.0, 0.0) } else { ZERO };
            worst = worst.max((ip - expected).norm());
        }
        worst = worst.max(s[i].inner(&ComplexMatrix::identity(2)).norm());
    }
    worst
}
