use crate::calculus::{antisymmetric_lift, d0, d1, wedge_tensor, OneForm, TensorSquare};
use crate::linalg::{c, epsilon, ComplexMatrix, C64};
use crate::triple::SpectralTriple;

/// A right connection on the free module, stored by its values `∇(e_c)`.
///
/// Everything else follows from the right Leibniz rule
/// `∇(Σ e_c a_c) = Σ ∇(e_c) a_c + Σ e_c ⊗ d a_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    pub nabla_e: [TensorSquare; 3],
}

impl Connection {
    pub fn new(nabla_e: [TensorSquare; 3]) -> Self {
        Self { nabla_e }
    }

    /// `∇(e_c) = Σ_jl e_j ⊗ e_l Γ[c][j][l]` with scalar `Γ`.
    pub fn from_christoffel(dim: usize, gamma: &[[[C64; 3]; 3]; 3]) -> Self {
        Self::new(std::array::from_fn(|cc| {
            TensorSquare::from_scalars(dim, gamma[cc])
        }))
    }

    pub fn dim(&self) -> usize {
        self.nabla_e[0].dim()
    }

    pub fn apply(&self, t: &SpectralTriple, x: &OneForm) -> TensorSquare {
        let mut out = TensorSquare::zero(x.dim());
        for (cc, ac) in x.coords.iter().enumerate() {
            out = &out + &self.nabla_e[cc].right_mul(ac);
            let da = d0(t, ac);
            for l in 0..3 {
                out.coords[cc][l] += &da.coords[l];
            }
        }
        out
    }

    /// `Γ[c][j][l]`, the coefficient of `e_j ⊗ e_l` in `∇(e_c)`, with the
    /// worst deviation of any coefficient from a multiple of the identity.
    pub fn christoffel(&self) -> ([[[C64; 3]; 3]; 3], f64) {
        let mut dev: f64 = 0.0;
        let gamma = std::array::from_fn(|cc| {
            let (z, d) = self.nabla_e[cc].scalar_coords();
            dev = dev.max(d);
            z
        });
        (gamma, dev)
    }

    /// Connection one-forms `ω_jk` with `∇(e_k) = Σ_j e_j ⊗ ω_jk`, indexed `[j][k]`.
    pub fn connection_forms(&self) -> [[OneForm; 3]; 3] {
        std::array::from_fn(|j| {
            std::array::from_fn(|k| {
                OneForm::new(std::array::from_fn(|l| {
                    self.nabla_e[k].coords[j][l].clone()
                }))
            })
        })
    }

    /// `T_∇(e_k) = ∧∇(e_k) + d e_k` for each basis element.
    pub fn torsion_on_basis(&self, t: &SpectralTriple) -> [crate::calculus::TwoForm; 3] {
        let dim = self.dim();
        std::array::from_fn(|k| &wedge_tensor(&self.nabla_e[k]) + &d1(t, &OneForm::basis(dim, k)))
    }
}

/// `∇^Gr(Σ e_k a_k) = Σ_k e_k ⊗ d a_k`.
pub fn grassmann(t: &SpectralTriple, x: &OneForm) -> TensorSquare {
    grassmann_connection(x.dim()).apply(t, x)
}

pub fn grassmann_connection(dim: usize) -> Connection {
    Connection::new(std::array::from_fn(|_| TensorSquare::zero(dim)))
}

/// `∇₀ = ∇^Gr - Q⁻¹(T_{∇^Gr})`.
///
/// `∇^Gr` kills the basis, so on `e_k` this is minus the antisymmetric lift
/// of `d e_k = -f_k`, that is `½ Σ_jl ε_kjl e_j ⊗ e_l`.
pub fn nabla0_connection(t: &SpectralTriple) -> Connection {
    let gr = grassmann_connection(t.dim_k);
    let torsion = gr.torsion_on_basis(t);
    Connection::new(std::array::from_fn(|k| {
        &gr.nabla_e[k] - &antisymmetric_lift(&torsion[k])
    }))
}

pub fn nabla0(t: &SpectralTriple, x: &OneForm) -> TensorSquare {
    nabla0_connection(t).apply(t, x)
}

/// `½ ε_cjl`, the closed form for `∇₀` and for the canonical Levi-Civita connection.
pub fn half_epsilon() -> [[[C64; 3]; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| std::array::from_fn(|k| c(0.5 * epsilon(i, j, k), 0.0)))
    })
}

/// `e_j ⊗ e_l Y` added to `∇(e_c)`; for tests of the defect checkers.
pub fn perturbed(
    conn: &Connection,
    cc: usize,
    j: usize,
    l: usize,
    y: &ComplexMatrix,
) -> Connection {
    let mut out = conn.clone();
    out.nabla_e[cc].coords[j][l] += y;
    out
}
