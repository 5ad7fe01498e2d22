use super::connection::{nabla0_connection, Connection};
use super::metric::{dual_pair, g_pair, Metric, METRIC_RANK_TOL};
use crate::calculus::{d0, OneForm, TensorSquare};
use crate::error::Result;
use crate::linalg::{c, numerical_rank, solve_linear, ComplexMatrix, C64};
use crate::triple::SpectralTriple;

/// `(1 - σ)(T)`.
pub fn antisymmetrize(t: &TensorSquare) -> TensorSquare {
    t - &t.flip()
}

/// `P_sym = (1 + σ)/2`.
pub fn p_sym(t: &TensorSquare) -> TensorSquare {
    (t + &t.flip()).scale(c(0.5, 0.0))
}

/// The right-hand side `ψ_{e_a, e_b}(e_c)` of the Koszul formula as an algebra element.
///
/// The three `g(· ⊗ dg(· ⊗ ·))` terms are evaluated as written; they vanish
/// here because `g` takes scalar values on the basis.
pub fn psi_element(t: &SpectralTriple, m: &Metric, a: usize, b: usize, cc: usize) -> ComplexMatrix {
    let dim = t.dim_k;
    let e = |k| OneForm::basis(dim, k);
    let dg = |x: usize, y: usize| d0(t, &g_pair(m, &e(x), &e(y)));

    let mut out = g_pair(m, &e(a), &dg(cc, b));
    out -= &g_pair(m, &e(cc), &dg(b, a));
    out += &g_pair(m, &e(b), &dg(a, cc));

    let n0 = nabla0_connection(t);
    let anti = |k: usize| antisymmetrize(&n0.nabla_e[k]);
    out -= &dual_pair(m, cc, b, &anti(a));
    out += &dual_pair(m, a, b, &anti(cc));
    out -= &dual_pair(m, cc, a, &anti(b));
    out
}

/// `ψ_{e_a, e_b}(e_c)` as a scalar; it lies in `Z(A_N) = C·1`.
pub fn psi(t: &SpectralTriple, m: &Metric, a: usize, b: usize, cc: usize) -> C64 {
    psi_element(t, m, a, b, cc).scalar_part()
}

/// The 9×9 system `2 g⁽²⁾((e_b ⊗ e_a) ⊗ ∇(e_c)) = ψ_{e_a,e_b}(e_c)`,
/// rows indexed by `3a + b` and unknowns by `3p + q`: entries `2 G_ap G_bq`.
pub fn koszul_matrix(m: &Metric) -> ComplexMatrix {
    ComplexMatrix::from_fn(9, 9, |row, col| {
        let (a, b) = (row / 3, row % 3);
        let (p, q) = (col / 3, col % 3);
        m.get(a, p) * m.get(b, q) * 2.0
    })
}

pub fn koszul_rank(m: &Metric) -> usize {
    numerical_rank(&koszul_matrix(m), METRIC_RANK_TOL)
}

/// The unique torsionless connection compatible with `m`, solved for scalar Christoffel symbols.
pub fn levi_civita(t: &SpectralTriple, m: &Metric) -> Result<Connection> {
    let a = koszul_matrix(m);
    let mut gamma = [[[C64::new(0.0, 0.0); 3]; 3]; 3];
    for (cc, gc) in gamma.iter_mut().enumerate() {
        let rhs: Vec<C64> = (0..9).map(|row| psi(t, m, row / 3, row % 3, cc)).collect();
        let sol = solve_linear(&a, &rhs, METRIC_RANK_TOL)?;
        for (idx, z) in sol.into_iter().enumerate() {
            gc[idx / 3][idx % 3] = z;
        }
    }
    Ok(Connection::from_christoffel(t.dim_k, &gamma))
}
