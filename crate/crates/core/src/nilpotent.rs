//! The nilpotent operator in its Jordan basis, together with the three
//! canonical structures attached to it: the kernel flag, the graded
//! decomposition into height pieces, and the base flag A_1 ⊂ … ⊂ A_m
//! obtained by pushing kernels down with powers of x.

use crate::error::Result;
use crate::field::FieldSpec;
use crate::jordan::JordanType;
use crate::matrix::MatrixGF;
use crate::subspace::Subspace;

/// Position of a Jordan basis vector: which block it belongs to (0-based)
/// and its height inside the block (1-based; height 1 is killed by x).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisLabel {
    pub block: usize,
    pub height: usize,
}

/// The chain ker x ⊂ ker x^2 ⊂ … ⊂ ker x^m = A.
#[derive(Debug, Clone)]
pub struct KernelFlag {
    pub spaces: Vec<Subspace>,
    pub dims: Vec<usize>,
}

/// A = E_1 ⊕ … ⊕ E_m with ker x^i = E_1 ⊕ … ⊕ E_i and x(E_i) ⊆ E_{i-1}.
///
/// E_i is spanned by the height-i Jordan basis vectors. A flag is fixed by
/// the grading symmetry exactly when each member splits along these pieces,
/// so this type stands in for the semisimple element, which is never
/// materialized.
#[derive(Debug, Clone)]
pub struct GradedDecomposition {
    pub pieces: Vec<Subspace>,
}

/// The flag A_i = x^{m-i}(ker x^{m-i+1}), ending at A_m = ker x.
#[derive(Debug, Clone)]
pub struct AFlag {
    pub spaces: Vec<Subspace>,
    pub dims: Vec<usize>,
}

/// A nilpotent operator built from a Jordan type, with the kernel flag,
/// graded pieces and base flag computed once at construction.
#[derive(Debug, Clone)]
pub struct NilpotentOperator {
    field: FieldSpec,
    jordan: JordanType,
    matrix: MatrixGF,
    labels: Vec<BasisLabel>,
    kernels: KernelFlag,
    graded: GradedDecomposition,
    a_flag: AFlag,
}

/// Builds the block-diagonal Jordan matrix of the given type, acting by
/// x e^(b)_h = e^(b)_{h-1} and x e^(b)_1 = 0.
pub fn build_nilpotent(jordan: JordanType, field: FieldSpec) -> NilpotentOperator {
    let d = jordan.dim();
    let m = jordan.order();

    let mut labels = Vec::with_capacity(d);
    for (block, &size) in jordan.parts().iter().enumerate() {
        for height in 1..=size {
            labels.push(BasisLabel { block, height });
        }
    }

    let mut matrix = MatrixGF::zeros(field, d, d);
    for (col, label) in labels.iter().enumerate() {
        if label.height >= 2 {
            // x sends this vector one step down its block
            matrix[(col - 1, col)] = 1;
        }
    }

    // kernel flag, by actually solving x^i v = 0
    let mut spaces = Vec::with_capacity(m);
    let mut dims = Vec::with_capacity(m);
    for i in 1..=m {
        let ker = Subspace::from_rref(matrix.pow(i).kernel());
        dims.push(ker.dim());
        spaces.push(ker);
    }
    let kernels = KernelFlag { spaces, dims };

    // graded pieces: E_i = span of the height-i basis vectors
    let pieces = (1..=m)
        .map(|i| {
            let rows: Vec<Vec<u64>> = labels
                .iter()
                .enumerate()
                .filter(|(_, l)| l.height == i)
                .map(|(idx, _)| {
                    let mut e = vec![0u64; d];
                    e[idx] = 1;
                    e
                })
                .collect();
            Subspace::from_generators(field, d, &rows).expect("unit vectors")
        })
        .collect();
    let graded = GradedDecomposition { pieces };

    // base flag: A_i = x^{m-i}(ker x^{m-i+1})
    let mut a_spaces = Vec::with_capacity(m);
    let mut a_dims = Vec::with_capacity(m);
    for i in 1..=m {
        let a = kernels.spaces[m - i]
            .image(&matrix.pow(m - i))
            .expect("operator is square of ambient size");
        a_dims.push(a.dim());
        a_spaces.push(a);
    }
    let a_flag = AFlag {
        spaces: a_spaces,
        dims: a_dims,
    };

    NilpotentOperator {
        field,
        jordan,
        matrix,
        labels,
        kernels,
        graded,
        a_flag,
    }
}

impl NilpotentOperator {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn jordan_type(&self) -> &JordanType {
        &self.jordan
    }

    pub fn matrix(&self) -> &MatrixGF {
        &self.matrix
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.jordan.dim()
    }

    /// Nilpotent order m.
    pub fn order(&self) -> usize {
        self.jordan.order()
    }

    pub fn kernel_flag(&self) -> &KernelFlag {
        &self.kernels
    }

    /// ker x^i for 1 <= i <= m; i = 0 gives the zero subspace, i > m the
    /// full space.
    pub fn kernel_power(&self, i: usize) -> Subspace {
        if i == 0 {
            Subspace::zero(self.field, self.dim())
        } else if i <= self.order() {
            self.kernels.spaces[i - 1].clone()
        } else {
            Subspace::full(self.field, self.dim())
        }
    }

    pub fn graded_pieces(&self) -> &GradedDecomposition {
        &self.graded
    }

    pub fn a_flag(&self) -> &AFlag {
        &self.a_flag
    }

    /// Kernel dimensions l_1, …, l_m.
    pub fn l_dims(&self) -> &[usize] {
        &self.kernels.dims
    }

    /// Base flag dimensions d_1, …, d_m.
    pub fn d_dims(&self) -> &[usize] {
        &self.a_flag.dims
    }

    /// The full ambient space.
    pub fn ambient(&self) -> Subspace {
        Subspace::full(self.field, self.dim())
    }

    /// The linear map inverting x^{m-i} on A_i, sending the bottom vector
    /// e^(b)_1 of each sufficiently tall block to e^(b)_{m-i+1}. Only its
    /// restriction to A_i is meaningful.
    pub fn lift_from_base(&self, i: usize) -> MatrixGF {
        let m = self.order();
        let d = self.dim();
        let target_height = m - i + 1;
        let mut lift = MatrixGF::zeros(self.field, d, d);
        for (col, label) in self.labels.iter().enumerate() {
            if label.height == 1 && self.jordan.parts()[label.block] >= target_height {
                // e^(b)_1 has index col; e^(b)_{target_height} sits
                // target_height - 1 places further along the same block
                lift[(col + target_height - 1, col)] = 1;
            }
        }
        lift
    }

    /// Projection of a vector onto the graded piece E_h along the others:
    /// in the Jordan basis this just selects the height-h coordinates.
    pub fn project_to_height(&self, v: &[u64], h: usize) -> Vec<u64> {
        v.iter()
            .zip(&self.labels)
            .map(|(&a, l)| if l.height == h { a } else { 0 })
            .collect()
    }
}

/// Convenience: build the operator for a partition given as a slice.
pub fn nilpotent_from_parts(parts: &[usize], q: u64) -> Result<NilpotentOperator> {
    let jordan = JordanType::new(parts.to_vec())?;
    let field = FieldSpec::new(q)?;
    Ok(build_nilpotent(jordan, field))
}
