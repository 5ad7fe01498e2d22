use std::ops::{Add, Neg, Sub};

use crate::linalg::{c, kron, ComplexMatrix, C64, ZERO};
use crate::triple::SpectralTriple;

macro_rules! three_coord_form {
    ($name:ident, $basis_doc:literal) => {
        #[doc = $basis_doc]
        #[derive(Clone, Debug, PartialEq)]
        pub struct $name {
            pub coords: [ComplexMatrix; 3],
        }

        impl $name {
            pub fn new(coords: [ComplexMatrix; 3]) -> Self {
                Self { coords }
            }

            pub fn zero(dim: usize) -> Self {
                Self::new(std::array::from_fn(|_| ComplexMatrix::zeros(dim, dim)))
            }

            /// The `k`-th basis element with coefficient 1.
            pub fn basis(dim: usize, k: usize) -> Self {
                let mut out = Self::zero(dim);
                out.coords[k] = ComplexMatrix::identity(dim);
                out
            }

            /// Scalar coordinates `z_k · 1`.
            pub fn from_scalars(dim: usize, z: [C64; 3]) -> Self {
                Self::new(z.map(|zk| ComplexMatrix::scalar(dim, zk)))
            }

            pub fn dim(&self) -> usize {
                self.coords[0].rows()
            }

            /// Right action: coefficients multiplied by `a` on the right.
            pub fn right_mul(&self, a: &ComplexMatrix) -> Self {
                Self::new(std::array::from_fn(|k| self.coords[k].matmul(a)))
            }

            /// Left action; the basis is central so `a` lands on the coefficients.
            pub fn left_mul(&self, a: &ComplexMatrix) -> Self {
                Self::new(std::array::from_fn(|k| a.matmul(&self.coords[k])))
            }

            pub fn scale(&self, z: C64) -> Self {
                Self::new(std::array::from_fn(|k| self.coords[k].scale(z)))
            }

            pub fn max_abs(&self) -> f64 {
                self.coords
                    .iter()
                    .map(ComplexMatrix::max_abs)
                    .fold(0.0, f64::max)
            }

            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                self.coords
                    .iter()
                    .zip(&other.coords)
                    .map(|(a, b)| a.max_abs_diff(b))
                    .fold(0.0, f64::max)
            }

            /// Normalised-trace scalars of the coordinates and the worst deviation from them.
            pub fn scalar_coords(&self) -> ([C64; 3], f64) {
                let z = std::array::from_fn(|k| self.coords[k].scalar_part());
                let dev = self
                    .coords
                    .iter()
                    .map(ComplexMatrix::scalar_deviation)
                    .fold(0.0, f64::max);
                (z, dev)
            }
        }

        impl Add<&$name> for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                $name::new(std::array::from_fn(|k| &self.coords[k] + &rhs.coords[k]))
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                &self + &rhs
            }
        }

        impl Sub<&$name> for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                $name::new(std::array::from_fn(|k| &self.coords[k] - &rhs.coords[k]))
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                &self - &rhs
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                self.scale(c(-1.0, 0.0))
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                self.scale(c(-1.0, 0.0))
            }
        }
    };
}

three_coord_form!(
    OneForm,
    "`Σ_k e_k a_k` in the free rank-3 module of one-forms, `e_k = 1 ⊗ σ_k`."
);
three_coord_form!(TwoForm, "`Σ_m f_m b_m` with `f_m = ½ Σ ε_mjk e_j ∧ e_k`.");

impl OneForm {
    /// Operator on `H_N`: `Σ_k a_k ⊗ σ_k`.
    pub fn operator(&self, t: &SpectralTriple) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(t.dim_h(), t.dim_h());
        for k in 0..3 {
            out += &kron(&self.coords[k], &t.sigma[k]);
        }
        out
    }
}

/// The operator classes `s_m` with `f_m ↦ 1 ⊗ s_m`, i.e. `s_3 = σ_1σ_2`,
/// `s_1 = σ_2σ_3`, `s_2 = σ_3σ_1`.
pub fn two_form_symbols(t: &SpectralTriple) -> [ComplexMatrix; 3] {
    let s = &t.sigma;
    [s[1].matmul(&s[2]), s[2].matmul(&s[0]), s[0].matmul(&s[1])]
}

impl TwoForm {
    /// A representative operator `Σ_m b_m ⊗ s_m`; two-forms are classes modulo junk.
    pub fn operator(&self, t: &SpectralTriple) -> ComplexMatrix {
        let sym = two_form_symbols(t);
        let mut out = ComplexMatrix::zeros(t.dim_h(), t.dim_h());
        for m in 0..3 {
            out += &kron(&self.coords[m], &sym[m]);
        }
        out
    }
}

/// `Σ_jk e_j ⊗ e_k T_jk` in `E ⊗_A E`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSquare {
    pub coords: [[ComplexMatrix; 3]; 3],
}

impl TensorSquare {
    pub fn new(coords: [[ComplexMatrix; 3]; 3]) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_fn(|_, _| ComplexMatrix::zeros(dim, dim))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> ComplexMatrix) -> Self {
        Self::new(std::array::from_fn(|j| std::array::from_fn(|k| f(j, k))))
    }

    /// `e_j ⊗ e_k`.
    pub fn basis(dim: usize, j: usize, k: usize) -> Self {
        let mut out = Self::zero(dim);
        out.coords[j][k] = ComplexMatrix::identity(dim);
        out
    }

    pub fn from_scalars(dim: usize, z: [[C64; 3]; 3]) -> Self {
        Self::from_fn(|j, k| ComplexMatrix::scalar(dim, z[j][k]))
    }

    /// `x ⊗ y` for one-forms; central basis lets `x_j` move past `e_k`.
    pub fn tensor(x: &OneForm, y: &OneForm) -> Self {
        Self::from_fn(|j, k| x.coords[j].matmul(&y.coords[k]))
    }

    pub fn dim(&self) -> usize {
        self.coords[0][0].rows()
    }

    pub fn right_mul(&self, a: &ComplexMatrix) -> Self {
        Self::from_fn(|j, k| self.coords[j][k].matmul(a))
    }

    pub fn left_mul(&self, a: &ComplexMatrix) -> Self {
        Self::from_fn(|j, k| a.matmul(&self.coords[j][k]))
    }

    pub fn scale(&self, z: C64) -> Self {
        Self::from_fn(|j, k| self.coords[j][k].scale(z))
    }

    /// `σ`: swap the tensor legs, `T_jk ↦ T_kj`.
    pub fn flip(&self) -> Self {
        Self::from_fn(|j, k| self.coords[k][j].clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.coords
            .iter()
            .flatten()
            .map(ComplexMatrix::max_abs)
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coords
            .iter()
            .flatten()
            .zip(other.coords.iter().flatten())
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn scalar_coords(&self) -> ([[C64; 3]; 3], f64) {
        let z = std::array::from_fn(|j| std::array::from_fn(|k| self.coords[j][k].scalar_part()));
        let dev = self
            .coords
            .iter()
            .flatten()
            .map(ComplexMatrix::scalar_deviation)
            .fold(0.0, f64::max);
        (z, dev)
    }
}

impl Add<&TensorSquare> for &TensorSquare {
    type Output = TensorSquare;
    fn add(self, rhs: &TensorSquare) -> TensorSquare {
        TensorSquare::from_fn(|j, k| &self.coords[j][k] + &rhs.coords[j][k])
    }
}

impl Add for TensorSquare {
    type Output = TensorSquare;
    fn add(self, rhs: TensorSquare) -> TensorSquare {
        &self + &rhs
    }
}

impl Sub<&TensorSquare> for &TensorSquare {
    type Output = TensorSquare;
    fn sub(self, rhs: &TensorSquare) -> TensorSquare {
        TensorSquare::from_fn(|j, k| &self.coords[j][k] - &rhs.coords[j][k])
    }
}

impl Sub for TensorSquare {
    type Output = TensorSquare;
    fn sub(self, rhs: TensorSquare) -> TensorSquare {
        &self - &rhs
    }
}

/// Complex scalar array helper: `[[0; 3]; 3]`.
pub fn zero_scalars() -> [[C64; 3]; 3] {
    [[ZERO; 3]; 3]
}
