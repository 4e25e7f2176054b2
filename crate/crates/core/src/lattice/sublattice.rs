use num_bigint::BigInt;
use num_traits::One;

use super::normal_form::{hermite_normal_form, smith_normal_form};
use super::{IntLattice, LatticeVector};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Basis of `{x ∈ Zⁿ : M·x = 0}`, saturated and in Hermite normal form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<LatticeVector> {
    let f = smith_normal_form(m);
    let rank = f.rank();
    let cols: Vec<Vec<BigInt>> = (rank..m.cols()).map(|j| f.right.column(j)).collect();
    hnf_rows(&cols, m.cols())
}

fn hnf_rows(rows: &[Vec<BigInt>], width: usize) -> Vec<LatticeVector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_rows(rows.to_vec()).expect("equal-length rows");
    let h = hermite_normal_form(&m);
    debug_assert_eq!(h.cols(), width);
    h.to_rows().into_iter().map(LatticeVector::new).collect()
}

/// The subgroup of an ambient lattice spanned by a list of vectors, which need
/// not be independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeSpan {
    ambient: IntLattice,
    generators: Vec<LatticeVector>,
}

impl SublatticeSpan {
    pub fn new(ambient: IntLattice, generators: Vec<LatticeVector>) -> Result<Self> {
        for g in &generators {
            ambient.check_vector(g)?;
        }
        Ok(SublatticeSpan { ambient, generators })
    }

    pub fn whole(ambient: IntLattice) -> Self {
        let generators = (0..ambient.rank()).map(|i| ambient.basis_vector(i)).collect();
        SublatticeSpan { ambient, generators }
    }

    pub fn zero(ambient: IntLattice) -> Self {
        SublatticeSpan { ambient, generators: Vec::new() }
    }

    pub fn ambient(&self) -> &IntLattice {
        &self.ambient
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// Generators as the rows of a `k × n` matrix.
    pub fn generator_matrix(&self) -> IntMatrix {
        if self.generators.is_empty() {
            return IntMatrix::zeros(0, self.ambient.rank());
        }
        IntMatrix::from_rows(self.generators.iter().map(|g| g.coords().to_vec()).collect())
            .expect("generators share the ambient rank")
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(&self.generator_matrix()).rank()
    }

    /// Gram matrix of the generators as listed.
    pub fn gram(&self) -> IntMatrix {
        let g = self.generator_matrix();
        &(&g * self.ambient.gram()) * &g.transpose()
    }

    /// The same subgroup with an independent basis in Hermite normal form.
    pub fn reduced(&self) -> SublatticeSpan {
        let h = hermite_normal_form(&self.generator_matrix());
        SublatticeSpan {
            ambient: self.ambient.clone(),
            generators: h.to_rows().into_iter().map(LatticeVector::new).collect(),
        }
    }

    /// The subgroup as a lattice in its own right, on the reduced basis.
    pub fn as_lattice(&self) -> IntLattice {
        IntLattice::new(self.reduced().gram()).expect("induced gram is symmetric")
    }

    /// Whether two spans generate the same subgroup of the same ambient.
    pub fn same_subgroup(&self, other: &SublatticeSpan) -> bool {
        self.ambient == other.ambient
            && hermite_normal_form(&self.generator_matrix()) == hermite_normal_form(&other.generator_matrix())
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        if v.len() != self.ambient.rank() {
            return false;
        }
        let mut extended = self.generators.clone();
        extended.push(v.clone());
        let bigger = SublatticeSpan { ambient: self.ambient.clone(), generators: extended };
        self.same_subgroup(&bigger)
    }

    /// `(Q-span) ∩ ambient`, with a Hermite-reduced basis.
    pub fn saturate(&self) -> SublatticeSpan {
        let f = smith_normal_form(&self.generator_matrix());
        let rows: Vec<Vec<BigInt>> = (0..f.rank()).map(|i| f.right_inverse.row(i).to_vec()).collect();
        SublatticeSpan { ambient: self.ambient.clone(), generators: hnf_rows(&rows, self.ambient.rank()) }
    }

    /// Index of the span inside its saturation.
    pub fn saturation_index(&self) -> BigInt {
        smith_normal_form(&self.generator_matrix()).invariant_factors().iter().product()
    }

    pub fn is_primitive(&self) -> bool {
        self.saturation_index().is_one()
    }

    /// The primitive sublattice of vectors pairing to zero with every generator.
    pub fn orthogonal_complement(&self) -> Result<SublatticeSpan> {
        if !self.ambient.is_nondegenerate() {
            return Err(Error::DegenerateAmbient);
        }
        let forms = &self.generator_matrix() * self.ambient.gram();
        Ok(SublatticeSpan { ambient: self.ambient.clone(), generators: integer_kernel(&forms) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l_ybr() -> IntLattice {
        IntLattice::from_i64(&[&[2, 0, -1], &[0, 2, -1], &[-1, -1, 0]], &[])
    }

    #[test]
    fn complement_in_l_ybr() {
        let l = l_ybr();
        let s = SublatticeSpan::new(l.clone(), vec![l.basis_vector(0), l.basis_vector(1)]).unwrap();
        let c = s.orthogonal_complement().unwrap();
        assert_eq!(c.generators(), &[LatticeVector::from_i64(&[1, 1, 2])]);
        assert_eq!(c.gram(), IntMatrix::from_i64(&[&[-4]]));
        assert!(c.is_primitive());
    }

    #[test]
    fn complement_edge_cases() {
        let l = l_ybr();
        assert_eq!(SublatticeSpan::whole(l.clone()).orthogonal_complement().unwrap().rank(), 0);
        let all = SublatticeSpan::zero(l.clone()).orthogonal_complement().unwrap();
        assert!(all.same_subgroup(&SublatticeSpan::whole(l)));
    }

    #[test]
    fn complement_requires_nondegenerate_ambient() {
        let l = IntLattice::from_i64(&[&[1, 1], &[1, 1]], &[]);
        let err = SublatticeSpan::zero(l).orthogonal_complement().unwrap_err();
        assert_eq!(err.to_string(), "ambient lattice degenerate");
    }

    #[test]
    fn saturation_of_multiple() {
        let l = IntLattice::diagonal(&[1]);
        let s = SublatticeSpan::new(l.clone(), vec![LatticeVector::from_i64(&[2])]).unwrap();
        assert!(!s.is_primitive());
        assert_eq!(s.saturate().generators(), &[LatticeVector::from_i64(&[1])]);
        assert_eq!(s.saturation_index(), 2.into());
    }

    #[test]
    fn d_plus_e_and_d_minus_e_have_index_two() {
        let l = IntLattice::from_i64(&[&[4, 3], &[3, 0]], &["D", "E"]);
        let s = SublatticeSpan::new(l.clone(), vec![l.class("D+E").unwrap(), l.class("D-E").unwrap()]).unwrap();
        assert!(s.saturate().same_subgroup(&SublatticeSpan::whole(l.clone())));
        assert_eq!(s.saturation_index(), 2.into());
        // index² = |det span| / |det ambient| = 36 / 9
        assert_eq!(s.as_lattice().determinant(), (-36).into());
    }

    #[test]
    fn primitive_pair_in_rank_three() {
        let l = l_ybr();
        let s = SublatticeSpan::new(l, vec![LatticeVector::from_i64(&[1, -1, 1]), LatticeVector::from_i64(&[1, 0, -1])])
            .unwrap();
        assert!(s.is_primitive());
    }

    #[test]
    fn kernel_of_empty_map_is_everything() {
        let k = integer_kernel(&IntMatrix::zeros(0, 3));
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn contains_checks_integral_membership() {
        let l = IntLattice::diagonal(&[1, 1]);
        let s = SublatticeSpan::new(l, vec![LatticeVector::from_i64(&[2, 0])]).unwrap();
        assert!(s.contains(&LatticeVector::from_i64(&[-4, 0])));
        assert!(!s.contains(&LatticeVector::from_i64(&[1, 0])));
    }
}
