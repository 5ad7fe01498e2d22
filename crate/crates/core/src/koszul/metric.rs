use rand::Rng;
use rand_distr::StandardNormal;

use crate::calculus::{OneForm, TensorSquare};
use crate::error::{NcgError, Result};
use crate::linalg::{c, numerical_rank, ComplexMatrix, C64, ONE, ZERO};

/// Rank threshold used for metric and Koszul-system nondegeneracy.
pub const METRIC_RANK_TOL: f64 = 1e-8;

/// A bilinear metric on the central basis, `G_kj = g(e_k ⊗ e_j)`.
///
/// Bilinearity forces the values into the center of `A_N`, which is `C·1`,
/// so a metric is a symmetric invertible complex 3×3 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    g: [[C64; 3]; 3],
}

fn det3(g: &[[C64; 3]; 3]) -> C64 {
    g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
}

impl Metric {
    /// Validates symmetry (`InvalidMetric`) and nondegeneracy (`SingularSystem`).
    pub fn new(g: [[C64; 3]; 3], tol: f64) -> Result<Self> {
        let scale = g.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        if !g
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(NcgError::InvalidMetric("entries must be finite".into()));
        }
        for j in 0..3 {
            for k in 0..j {
                let asym = (g[j][k] - g[k][j]).norm();
                if asym > tol * scale.max(1.0) {
                    return Err(NcgError::InvalidMetric(format!(
                        "not symmetric: |G[{j}][{k}] - G[{k}][{j}]| = {asym:.3e}"
                    )));
                }
            }
        }
        let m = ComplexMatrix::from_fn(3, 3, |i, j| g[i][j]);
        let rank = numerical_rank(&m, METRIC_RANK_TOL);
        if rank < 3 {
            return Err(NcgError::SingularSystem { rank, dim: 3 });
        }
        if det3(&g).norm() <= tol {
            // Full rank at the SVD threshold but below the determinant floor.
            return Err(NcgError::SingularSystem { rank: 2, dim: 3 });
        }
        Ok(Self { g })
    }

    /// `g(e_k ⊗ e_j) = δ_kj`.
    pub fn canonical() -> Self {
        Self {
            g: std::array::from_fn(|i| std::array::from_fn(|j| if i == j { ONE } else { ZERO })),
        }
    }

    pub fn scaled(&self, lambda: C64) -> Result<Self> {
        Self::new(self.g.map(|row| row.map(|z| z * lambda)), 0.0)
    }

    pub fn diagonal(d: [C64; 3]) -> Result<Self> {
        let mut g = [[ZERO; 3]; 3];
        for i in 0..3 {
            g[i][i] = d[i];
        }
        Self::new(g, 0.0)
    }

    /// `A + Aᵀ + 3·1` for Gaussian complex `A`; redrawn until well conditioned.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let a: [[C64; 3]; 3] = std::array::from_fn(|_| {
                std::array::from_fn(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            });
            let g = std::array::from_fn(|i| {
                std::array::from_fn(|j| a[i][j] + a[j][i] + if i == j { c(3.0, 0.0) } else { ZERO })
            });
            if let Ok(m) = Self::new(g, 1e-3) {
                return m;
            }
        }
    }

    pub fn entries(&self) -> &[[C64; 3]; 3] {
        &self.g
    }

    pub fn get(&self, k: usize, j: usize) -> C64 {
        self.g[k][j]
    }

    pub fn determinant(&self) -> C64 {
        det3(&self.g)
    }

    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(3, 3, |i, j| self.g[i][j])
    }
}

/// `g(x ⊗ y) = Σ_jk G_jk x_j y_k`.
pub fn g_pair(m: &Metric, x: &OneForm, y: &OneForm) -> ComplexMatrix {
    let dim = x.dim();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for j in 0..3 {
        for k in 0..3 {
            let gjk = m.get(j, k);
            if gjk != ZERO {
                out += &x.coords[j].matmul(&y.coords[k]).scale(gjk);
            }
        }
    }
    out
}

/// `g⁽²⁾((e_j ⊗ e_k s) ⊗ (e_p ⊗ e_q t)) = G_kp G_jq s t`: the inner legs pair first.
pub fn g2_pair(m: &Metric, s: &TensorSquare, t: &TensorSquare) -> ComplexMatrix {
    let dim = s.dim();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for j in 0..3 {
        for k in 0..3 {
            for p in 0..3 {
                for q in 0..3 {
                    let w = m.get(k, p) * m.get(j, q);
                    if w != ZERO {
                        out += &s.coords[j][k].matmul(&t.coords[p][q]).scale(w);
                    }
                }
            }
        }
    }
    out
}

/// `(g(e_a ⊗ -) ⊗ g(e_b ⊗ -))(T) = Σ_pq G_ap G_bq T_pq`.
pub fn dual_pair(m: &Metric, a: usize, b: usize, t: &TensorSquare) -> ComplexMatrix {
    let dim = t.dim();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for p in 0..3 {
        for q in 0..3 {
            let w = m.get(a, p) * m.get(b, q);
            if w != ZERO {
                out += &t.coords[p][q].scale(w);
            }
        }
    }
    out
}

/// The 9×9 matrix of `g⁽²⁾` on basis tensors, indexed by `3j + k`.
pub fn g2_gram(m: &Metric) -> ComplexMatrix {
    ComplexMatrix::from_fn(9, 9, |row, col| {
        let (j, k) = (row / 3, row % 3);
        let (p, q) = (col / 3, col % 3);
        m.get(k, p) * m.get(j, q)
    })
}
