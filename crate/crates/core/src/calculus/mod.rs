//! Differential calculus of the fuzzy sphere in free coordinates.
//!
//! One-forms are free on the central basis `e_k`, two-forms on `f_m`, and
//! `d e_m = -f_m`. The `junk` submodule recomputes all of this from the
//! Dirac operator alone and is used to validate the fast path.

mod forms;
pub mod junk;

pub use forms::{two_form_symbols, zero_scalars, OneForm, TensorSquare, TwoForm};
pub use junk::{
    de_oracle, detect_orientation, junk_space, one_form_span_check, partial_trace_c2, FormOracle,
    DEFAULT_ORACLE_CAP,
};

use crate::linalg::{c, epsilon, ComplexMatrix};
use crate::triple::SpectralTriple;

/// `d a = Σ_k e_k δ_k(a)`.
pub fn d0(t: &SpectralTriple, a: &ComplexMatrix) -> OneForm {
    t.dirac_commutator(a)
}

/// `x ∧ y` with `e_j ∧ e_k = Σ_m ε_jkm f_m`.
pub fn wedge1(x: &OneForm, y: &OneForm) -> TwoForm {
    let dim = x.dim();
    let mut out = TwoForm::zero(dim);
    for j in 0..3 {
        for k in 0..3 {
            if j == k {
                continue;
            }
            let prod = x.coords[j].matmul(&y.coords[k]);
            for m in 0..3 {
                let e = epsilon(j, k, m);
                if e != 0.0 {
                    out.coords[m] += &prod.scale(c(e, 0.0));
                }
            }
        }
    }
    out
}

/// The bimodule map `∧ : E ⊗ E → Ω²`.
pub fn wedge_tensor(t: &TensorSquare) -> TwoForm {
    let dim = t.dim();
    let mut out = TwoForm::zero(dim);
    for j in 0..3 {
        for k in 0..3 {
            for m in 0..3 {
                let e = epsilon(j, k, m);
                if e != 0.0 {
                    out.coords[m] += &t.coords[j][k].scale(c(e, 0.0));
                }
            }
        }
    }
    out
}

/// `d(Σ e_k a_k) = Σ_k (d e_k) a_k - Σ_k e_k ∧ d a_k` with `d e_k = -f_k`.
pub fn d1(t: &SpectralTriple, x: &OneForm) -> TwoForm {
    let mut out = TwoForm::new((-x).coords);
    for (k, ak) in x.coords.iter().enumerate() {
        let dak = d0(t, ak);
        for l in 0..3 {
            for m in 0..3 {
                let e = epsilon(k, l, m);
                if e != 0.0 {
                    out.coords[m] -= &dak.coords[l].scale(c(e, 0.0));
                }
            }
        }
    }
    out
}

/// `Q⁻¹`: the antisymmetric tensor `β` with `∧β = W`, `β_jk = ½ Σ_m ε_jkm W_m`.
pub fn antisymmetric_lift(w: &TwoForm) -> TensorSquare {
    let dim = w.dim();
    TensorSquare::from_fn(|j, k| {
        let mut out = ComplexMatrix::zeros(dim, dim);
        for m in 0..3 {
            let e = epsilon(j, k, m);
            if e != 0.0 {
                out += &w.coords[m].scale(c(0.5 * e, 0.0));
            }
        }
        out
    })
}
