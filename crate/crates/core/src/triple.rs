//! The truncated fuzzy-sphere spectral triple `(A_N, H_N, D_N)`.
//!
//! `K_N` is the direct sum of the su(2) irreps of dimension `1, 3, ..., 2N+1`,
//! `A_N = B(K_N)` acts on `H_N = K_N ⊗ C^2`, and `D = Σ_k X_k ⊗ σ_k` with
//! `σ_k = i τ_k`. Axes are 0-based throughout the crate.

use crate::calculus::OneForm;
use crate::linalg::{block_diag, c, kron, pauli, ComplexMatrix, I};

/// Generators `J_k` of the `(n+1)`-dimensional irrep, normalised so that
/// `[J_k, J_l] = Σ_m ε_klm J_m`.
#[derive(Clone, Debug)]
pub struct Su2Irrep {
    pub two_j: usize,
    pub j: [ComplexMatrix; 3],
}

/// Built from the Hermitian spin matrices `L_k` in the `L_z`-diagonal basis,
/// ordered `m = j, j-1, ..., -j`, as `J_k = -i L_k`.
pub fn irrep_su2(n: usize) -> Su2Irrep {
    let d = n + 1;
    let s = n as f64 / 2.0;
    let m_of = |i: usize| s - i as f64;
    // L_+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>, and |m+1> sits one index up.
    let mut lp = ComplexMatrix::zeros(d, d);
    for i in 1..d {
        let m = m_of(i);
        lp[(i - 1, i)] = c((s * (s + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let lm = lp.adjoint();
    let lx = (&lp + &lm).scale(c(0.5, 0.0));
    let ly = (&lp - &lm).scale(c(0.0, -0.5));
    let lz = ComplexMatrix::diag(&(0..d).map(|i| c(m_of(i), 0.0)).collect::<Vec<_>>());
    let minus_i = -I;
    Su2Irrep {
        two_j: n,
        j: [lx.scale(minus_i), ly.scale(minus_i), lz.scale(minus_i)],
    }
}

/// Overall sign of the `X_k`.
///
/// `Flipped` negates every `X_k`, which reverses the sign of the structure
/// constants and hence of `d e_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Standard,
    Flipped,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Standard => 1.0,
            Orientation::Flipped => -1.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectralTriple {
    pub n: usize,
    pub dim_k: usize,
    pub x: [ComplexMatrix; 3],
    pub sigma: [ComplexMatrix; 3],
    pub dirac: ComplexMatrix,
    pub orientation: Orientation,
}

pub fn build_triple(n: usize) -> SpectralTriple {
    build_triple_with(n, Orientation::Standard)
}

pub fn build_triple_with(n: usize, orientation: Orientation) -> SpectralTriple {
    let irreps: Vec<Su2Irrep> = (0..=n).map(|l| irrep_su2(2 * l)).collect();
    let sign = c(orientation.sign(), 0.0);
    let x: [ComplexMatrix; 3] = std::array::from_fn(|k| {
        let blocks: Vec<ComplexMatrix> = irreps.iter().map(|r| r.j[k].clone()).collect();
        block_diag(&blocks).scale(sign)
    });
    let sigma = pauli().map(|t| t.scale(I));
    let dim_k = (n + 1) * (n + 1);
    let mut dirac = ComplexMatrix::zeros(2 * dim_k, 2 * dim_k);
    for k in 0..3 {
        dirac += &kron(&x[k], &sigma[k]);
    }
    SpectralTriple {
        n,
        dim_k,
        x,
        sigma,
        dirac,
        orientation,
    }
}

impl SpectralTriple {
    pub fn dim_h(&self) -> usize {
        2 * self.dim_k
    }

    pub fn identity(&self) -> ComplexMatrix {
        ComplexMatrix::identity(self.dim_k)
    }

    /// `δ_k(a) = [X_k, a]`.
    pub fn delta(&self, k: usize, a: &ComplexMatrix) -> ComplexMatrix {
        self.x[k].commutator(a)
    }

    /// Coordinates of `[D, a]` in the central basis `e_k = 1 ⊗ σ_k`.
    pub fn dirac_commutator(&self, a: &ComplexMatrix) -> OneForm {
        OneForm::new(std::array::from_fn(|k| self.delta(k, a)))
    }

    /// `a` acting on `H_N` as `a ⊗ 1`.
    pub fn represent(&self, a: &ComplexMatrix) -> ComplexMatrix {
        kron(a, &ComplexMatrix::identity(2))
    }

    /// Uniformly random-ish algebra element for property checks.
    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> ComplexMatrix {
        ComplexMatrix::random(self.dim_k, self.dim_k, rng)
    }

    /// Max residual of `[X_k, X_l] - Σ_m ε_klm X_m` over all `k, l`.
    pub fn commutation_residual(&self) -> f64 {
        su2_residual(&self.x)
    }

    pub fn self_adjoint_residual(&self) -> f64 {
        self.dirac.max_abs_diff(&self.dirac.adjoint())
    }

    /// Max residual of `σ_j σ_k + σ_k σ_j + 2 δ_jk` on `H_N`.
    pub fn clifford_residual(&self) -> f64 {
        let id2 = ComplexMatrix::identity(2);
        let idk = self.identity();
        let lift: Vec<ComplexMatrix> = self.sigma.iter().map(|s| kron(&idk, s)).collect();
        let mut worst: f64 = 0.0;
        for j in 0..3 {
            for k in 0..3 {
                let anti = &lift[j].matmul(&lift[k]) + &lift[k].matmul(&lift[j]);
                let target = if j == k {
                    kron(&idk, &id2).scale(c(-2.0, 0.0))
                } else {
                    ComplexMatrix::zeros(self.dim_h(), self.dim_h())
                };
                worst = worst.max(anti.max_abs_diff(&target));
            }
        }
        worst
    }
}

/// Max residual of the su(2) relations `[J_k, J_l] = Σ_m ε_klm J_m`.
pub fn su2_residual(j: &[ComplexMatrix; 3]) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..3 {
        for l in 0..3 {
            let lhs = j[k].commutator(&j[l]);
            let mut rhs = ComplexMatrix::zeros(lhs.rows(), lhs.cols());
            for (m, jm) in j.iter().enumerate() {
                let e = crate::linalg::epsilon(k, l, m);
                if e != 0.0 {
                    rhs += &jm.scale(c(e, 0.0));
                }
            }
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
    }
    worst
}

/// `Σ_k J_k^2`, which equals `-(n/2)(n/2 + 1)` times the identity.
pub fn casimir(irrep: &Su2Irrep) -> ComplexMatrix {
    let d = irrep.two_j + 1;
    let mut out = ComplexMatrix::zeros(d, d);
    for jk in &irrep.j {
        out += &jk.matmul(jk);
    }
    out
}
