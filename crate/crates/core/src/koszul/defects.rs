use super::connection::Connection;
use super::metric::{dual_pair, g_pair, Metric};
use super::solver::antisymmetrize;
use crate::calculus::{antisymmetric_lift, d0, OneForm, TensorSquare, TwoForm};
use crate::linalg::{c, ComplexMatrix, C64};
use crate::triple::SpectralTriple;

/// `T_∇(e_k) = ∧∇(e_k) + d e_k`.
pub fn torsion_defect(t: &SpectralTriple, conn: &Connection) -> [TwoForm; 3] {
    conn.torsion_on_basis(t)
}

/// `Π⁰_g(∇)(e_k ⊗ e_j) = (g ⊗ id)(σ₂₃(∇e_k ⊗ e_j) + e_k ⊗ ∇e_j)`.
fn pi0(m: &Metric, conn: &Connection, k: usize, j: usize) -> OneForm {
    let dim = conn.dim();
    let mut out = OneForm::zero(dim);
    for q in 0..3 {
        for p in 0..3 {
            out.coords[q] += &conn.nabla_e[k].coords[p][q].scale(m.get(p, j));
            out.coords[q] += &conn.nabla_e[j].coords[p][q].scale(m.get(k, p));
        }
    }
    out
}

/// Entry `(k, j)` is `Π⁰_g(∇)(e_k ⊗ e_j) - d g(e_k ⊗ e_j)`.
pub fn compat_defect_center(
    t: &SpectralTriple,
    m: &Metric,
    conn: &Connection,
) -> [[OneForm; 3]; 3] {
    let dim = conn.dim();
    std::array::from_fn(|k| {
        std::array::from_fn(|j| {
            let dg = d0(t, &ComplexMatrix::scalar(dim, m.get(k, j)));
            &pi0(m, conn, k, j) - &dg
        })
    })
}

/// `Π_g(∇)(x ⊗ y) - d g(x ⊗ y)`, extending `Π⁰` by
/// `Π_g(∇)(ω ⊗ η a) = Π⁰_g(∇)(ω ⊗ η) a + g(ω ⊗ η) da`.
pub fn full_compat_defect(
    t: &SpectralTriple,
    m: &Metric,
    conn: &Connection,
    x: &OneForm,
    y: &OneForm,
) -> OneForm {
    let dim = x.dim();
    let mut pi = OneForm::zero(dim);
    for a in 0..3 {
        for b in 0..3 {
            let coeff = x.coords[a].matmul(&y.coords[b]);
            pi = &pi + &pi0(m, conn, a, b).right_mul(&coeff);
            pi = &pi + &d0(t, &coeff).scale(m.get(a, b));
        }
    }
    &pi - &d0(t, &g_pair(m, x, y))
}

/// `∇(a x) - a ∇(x) - σ(da ⊗ x)`.
pub fn bimodule_defect(
    t: &SpectralTriple,
    conn: &Connection,
    a: &ComplexMatrix,
    x: &OneForm,
) -> TensorSquare {
    let lhs = conn.apply(t, &x.left_mul(a));
    let rhs = conn.apply(t, x).left_mul(a);
    let da_x = TensorSquare::tensor(&d0(t, a), x);
    &(&lhs - &rhs) - &da_x.flip()
}

/// `(φ_i ⊗ φ_j) W = 2 (φ_i ⊗ φ_j) β` with `β` the antisymmetric lift of `W`
/// and `φ_i = g(e_i ⊗ -)`.
pub fn eval_two_form(m: &Metric, i: usize, j: usize, w: &TwoForm) -> ComplexMatrix {
    dual_pair(m, i, j, &antisymmetric_lift(w)).scale(c(2.0, 0.0))
}

/// `2 (φ_i ⊗ φ_j)(1 - P_sym) γ`, which depends on `γ` only through `∧γ`.
pub fn eval_via_any_lift(m: &Metric, i: usize, j: usize, gamma: &TensorSquare) -> ComplexMatrix {
    // 2 (1 - P_sym) = 1 - σ.
    dual_pair(m, i, j, &antisymmetrize(gamma))
}

/// Max over basis triples of the difference of
/// `g(e_η ⊗ ω₍₀₎) g(e_θ ⊗ ω₍₁₎) - g(e_η ⊗ ω₍₁₎) g(e_θ ⊗ ω₍₀₎)` between two connections.
pub fn antisymmetrized_pairing_gap(m: &Metric, lhs: &Connection, rhs: &Connection) -> f64 {
    let mut worst: f64 = 0.0;
    for w in 0..3 {
        let l = antisymmetrize(&lhs.nabla_e[w]);
        let r = antisymmetrize(&rhs.nabla_e[w]);
        for eta in 0..3 {
            for theta in 0..3 {
                let gap = &dual_pair(m, eta, theta, &l) - &dual_pair(m, eta, theta, &r);
                worst = worst.max(gap.max_abs());
            }
        }
    }
    worst
}

/// Solve `g(e_θ ⊗ ξ) = v_θ` for the one-form `ξ` with scalar coordinates.
pub fn solve_dual(m: &Metric, v: [C64; 3]) -> crate::error::Result<[C64; 3]> {
    let sol = crate::linalg::solve_linear(&m.matrix(), &v, super::metric::METRIC_RANK_TOL)?;
    Ok([sol[0], sol[1], sol[2]])
}

pub fn max_two_form(forms: &[TwoForm]) -> f64 {
    forms.iter().map(TwoForm::max_abs).fold(0.0, f64::max)
}

pub fn max_one_form_grid(forms: &[[OneForm; 3]; 3]) -> f64 {
    forms
        .iter()
        .flatten()
        .map(OneForm::max_abs)
        .fold(0.0, f64::max)
}
