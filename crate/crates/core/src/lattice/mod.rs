//! Lattices and their constructions: polar lattices, primitive sublattices,
//! projected lattices, primitive normals, cosets, successive minima and
//! gauge-short bases.

mod minima;

pub use minima::{mahler_basis, successive_minima, MahlerBasis, MinimaProfile};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{
    integer_kernel, rat_of, unimodular_completion, Int, QMatrix, QVector, Rational,
};
use crate::{Error, Result};

/// A lattice given by a column basis inside rational ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: QMatrix, // ambient x rank, columns linearly independent
}

/// A translate `shift + Lattice`.
#[derive(Clone, Debug)]
pub struct AffineLattice {
    pub lattice: Lattice,
    pub shift: QVector,
}

impl Lattice {
    pub fn standard(n: usize) -> Lattice {
        Lattice {
            ambient: n,
            basis: QMatrix::identity(n),
        }
    }

    pub fn from_basis(basis: QMatrix) -> Result<Lattice> {
        if basis.rank() != basis.n_cols() {
            return Err(Error::NotIndependent);
        }
        Ok(Lattice {
            ambient: basis.n_rows(),
            basis,
        })
    }

    /// Rank-0 lattice `{0}`.
    pub fn trivial(ambient: usize) -> Lattice {
        Lattice {
            ambient,
            basis: QMatrix::zeros(ambient, 0),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.n_cols()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<QVector> {
        self.basis.columns()
    }

    /// The lattice point with the given integer coordinates.
    pub fn point(&self, coords: &QVector) -> QVector {
        self.basis.matvec(coords)
    }

    /// Rational coordinates of `x` in the basis, if `x` lies in the span.
    pub fn span_coords(&self, x: &QVector) -> Option<QVector> {
        let c = self.basis.rref_solve(x)?;
        (self.basis.matvec(&c) == *x).then_some(c)
    }

    /// Integer coordinates of `x`, if `x` is a lattice point.
    pub fn coords(&self, x: &QVector) -> Option<QVector> {
        let c = self.span_coords(x)?;
        c.is_integral().then_some(c)
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.coords(x).is_some()
    }

    /// `|det B|` for full-rank lattices.
    pub fn det_abs(&self) -> Result<Rational> {
        if !self.is_full_rank() {
            return Err(Error::NotFullRank);
        }
        Ok(self.basis.determinant()?.abs())
    }

    /// Squared determinant `det(B^T B)`, defined for every rank.
    pub fn det_sq(&self) -> Rational {
        if self.rank() == 0 {
            return Rational::one();
        }
        self.basis.gram().determinant().expect("gram is square")
    }

    /// Polar (dual) lattice: inverse-transpose basis.
    pub fn polar(&self) -> Result<Lattice> {
        if !self.is_full_rank() {
            return Err(Error::NotFullRank);
        }
        let inv = self.basis.inverse().ok_or(Error::NotIndependent)?;
        Ok(Lattice {
            ambient: self.ambient,
            basis: inv.transpose(),
        })
    }

    /// Two lattices are equal as point sets iff each basis is integral in
    /// the other.
    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.ambient == other.ambient
            && self.rank() == other.rank()
            && other.basis_vectors().iter().all(|v| self.contains(v))
            && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    /// Primitive sublattice `Λ ∩ span(spanning)`.
    pub fn primitive_sublattice(&self, spanning: &[QVector]) -> Result<Lattice> {
        let coords: Vec<QVector> = spanning
            .iter()
            .map(|v| self.coords(v).ok_or(Error::NotInLattice))
            .collect::<Result<_>>()?;
        if coords.is_empty() || coords.iter().all(QVector::is_zero) {
            return Ok(Lattice::trivial(self.ambient));
        }
        let k = self.rank();
        let s = QMatrix::from_columns(coords);
        // annihilator of the span, scaled to integer rows
        let ann: Vec<QVector> = s
            .transpose()
            .kernel()
            .iter()
            .map(|a| {
                let mut l = Int::one();
                for c in a.coords() {
                    l = l.lcm(c.denom());
                }
                a.scale(&rat_of(l))
            })
            .collect();
        let sat = if ann.is_empty() {
            QMatrix::identity(k)
        } else {
            QMatrix::from_columns(integer_kernel(&QMatrix::from_rows(ann))?)
        };
        Ok(Lattice {
            ambient: self.ambient,
            basis: self.basis.matmul(&sat),
        })
    }

    /// Projected lattice `Λ | v^perp`, computed as the polar, inside
    /// `v^perp`, of the primitive sublattice `Λ* ∩ v^perp`.
    pub fn projected(&self, v: &QVector) -> Result<Lattice> {
        if !self.is_full_rank() {
            return Err(Error::NotFullRank);
        }
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let dual = self.polar()?;
        // Λ* ∩ v^perp in dual coordinates: integer kernel of the scaled row
        let u = dual.basis.transpose().matvec(v);
        let mut l = Int::one();
        for c in u.coords() {
            l = l.lcm(c.denom());
        }
        let u_int = u.scale(&rat_of(l));
        let ker = integer_kernel(&QMatrix::from_rows(vec![u_int]))?;
        let w = dual.basis.matmul(&QMatrix::from_columns(ker));
        // polar within the subspace: W (W^T W)^{-1}
        let gram_inv = w.gram().inverse().ok_or(Error::NotIndependent)?;
        Ok(Lattice {
            ambient: self.ambient,
            basis: w.matmul(&gram_inv),
        })
    }

    /// Primitive normal vector in `Λ*` of the hyperplane spanned by `n - 1`
    /// independent lattice vectors.
    pub fn primitive_normal(&self, spanning: &[QVector]) -> Result<QVector> {
        if !self.is_full_rank() {
            return Err(Error::NotFullRank);
        }
        let n = self.ambient;
        if spanning.len() != n - 1 {
            return Err(Error::RankMismatch {
                expected: n - 1,
                got: spanning.len(),
            });
        }
        let coords: Vec<QVector> = spanning
            .iter()
            .map(|v| self.coords(v).ok_or(Error::NotInLattice))
            .collect::<Result<_>>()?;
        let s = QMatrix::from_columns(coords);
        if s.rank() != n - 1 {
            return Err(Error::RankMismatch {
                expected: n - 1,
                got: s.rank(),
            });
        }
        let ker = integer_kernel(&s.transpose())?;
        debug_assert_eq!(ker.len(), 1);
        let mut w = ker[0].clone();
        if let Some(first) = w.coords().iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                w = w.neg();
            }
        }
        Ok(self.polar()?.point(&w))
    }

    /// Representatives of `Λ / mΛ`, exactly `m^rank` of them, ordered by
    /// lexicographic coordinates.
    pub fn coset_representatives(&self, m: u32) -> Result<Vec<QVector>> {
        if m == 0 {
            return Err(Error::InvalidParam("modulus must be positive".into()));
        }
        let k = self.rank();
        let mut out = Vec::with_capacity((m as usize).pow(k as u32));
        let mut digits = vec![0u32; k];
        loop {
            let coords = QVector::from_ints(&digits.iter().map(|&d| d as i64).collect::<Vec<_>>());
            out.push(self.point(&coords));
            // increment base-m counter (last digit fastest keeps lex order)
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < m {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    /// A vector `u ∈ Λ` with `Λ = sub ⊕ Z u`, for a primitive corank-one
    /// sublattice `sub`.
    pub fn complete_corank_one(&self, sub: &Lattice) -> Result<QVector> {
        let k = self.rank();
        if sub.rank() + 1 != k {
            return Err(Error::RankMismatch {
                expected: k - 1,
                got: sub.rank(),
            });
        }
        let coords: Vec<QVector> = sub
            .basis_vectors()
            .iter()
            .map(|v| self.coords(v).ok_or(Error::NotInLattice))
            .collect::<Result<_>>()?;
        let c = if coords.is_empty() {
            QMatrix::zeros(k, 0)
        } else {
            QMatrix::from_columns(coords)
        };
        let w = unimodular_completion(&c)?;
        Ok(self.point(&w))
    }
}

impl AffineLattice {
    pub fn new(lattice: Lattice, shift: QVector) -> Result<AffineLattice> {
        if shift.dim() != lattice.ambient() {
            return Err(Error::DimensionMismatch {
                expected: lattice.ambient(),
                got: shift.dim(),
            });
        }
        Ok(AffineLattice { lattice, shift })
    }

    pub fn linear(lattice: Lattice) -> AffineLattice {
        let n = lattice.ambient();
        AffineLattice {
            lattice,
            shift: QVector::zeros(n),
        }
    }

    pub fn ambient(&self) -> usize {
        self.lattice.ambient()
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.lattice.contains(&x.sub(&self.shift))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rint};

    fn scaled(n: usize, s: i64) -> Lattice {
        let cols = (0..n)
            .map(|i| QVector::unit(n, i).scale(&rint(s)))
            .collect();
        Lattice::from_basis(QMatrix::from_columns(cols)).unwrap()
    }

    #[test]
    fn polar_of_standard_is_standard() {
        let z3 = Lattice::standard(3);
        assert!(z3.polar().unwrap().same_lattice(&z3));
    }

    #[test]
    fn polar_of_scaled() {
        // (2Z^3)* = (1/2)Z^3 and det * det = 1
        let two = scaled(3, 2);
        let polar = two.polar().unwrap();
        assert!(polar.contains(&QVector::new(vec![rat(1, 2), rint(0), rint(0)])));
        assert_eq!(two.det_abs().unwrap() * polar.det_abs().unwrap(), rint(1));
    }

    #[test]
    fn polar_det_product_on_unimodular_image() {
        let u = QMatrix::from_rows(vec![
            QVector::from_ints(&[1, 2, 0, -1]),
            QVector::from_ints(&[0, 1, 3, 2]),
            QVector::from_ints(&[0, 0, 1, 5]),
            QVector::from_ints(&[0, 0, 0, 1]),
        ]);
        assert_eq!(u.determinant().unwrap(), rint(1));
        let lat = Lattice::from_basis(u).unwrap();
        let polar = lat.polar().unwrap();
        assert_eq!(lat.det_abs().unwrap() * polar.det_abs().unwrap(), rint(1));
        assert!(polar.polar().unwrap().same_lattice(&lat));
    }

    #[test]
    fn primitive_sublattice_saturates_multiples() {
        let z3 = Lattice::standard(3);
        let sub = z3
            .primitive_sublattice(&[QVector::from_ints(&[2, 0, 0])])
            .unwrap();
        assert_eq!(sub.rank(), 1);
        assert!(sub.contains(&QVector::from_ints(&[1, 0, 0])));
    }

    #[test]
    fn primitive_sublattice_plane() {
        let z3 = Lattice::standard(3);
        let sub = z3
            .primitive_sublattice(&[
                QVector::from_ints(&[1, 2, 0]),
                QVector::from_ints(&[0, 0, 3]),
            ])
            .unwrap();
        assert_eq!(sub.rank(), 2);
        assert!(sub.contains(&QVector::from_ints(&[0, 0, 1])));
        assert!(sub.contains(&QVector::from_ints(&[1, 2, 0])));
        assert!(!sub.contains(&QVector::from_ints(&[1, 0, 0])));
    }

    #[test]
    fn primitive_sublattice_diagonal() {
        let z2 = Lattice::standard(2);
        let sub = z2
            .primitive_sublattice(&[QVector::from_ints(&[1, 1])])
            .unwrap();
        assert_eq!(sub.rank(), 1);
        assert!(sub.contains(&QVector::from_ints(&[1, 1])));
        assert!(!sub.contains(&QVector::new(vec![rat(1, 2), rat(1, 2)])));
    }

    #[test]
    fn empty_spanning_set_gives_trivial_lattice() {
        let z2 = Lattice::standard(2);
        assert_eq!(z2.primitive_sublattice(&[]).unwrap().rank(), 0);
    }

    #[test]
    fn projected_standard_along_axis() {
        let z3 = Lattice::standard(3);
        let proj = z3.projected(&QVector::unit(3, 2)).unwrap();
        assert_eq!(proj.rank(), 2);
        assert!(proj.contains(&QVector::from_ints(&[1, 0, 0])));
        assert!(proj.contains(&QVector::from_ints(&[0, 1, 0])));
    }

    #[test]
    fn projected_diagonal() {
        // Z^2 | (1,1)^perp is generated by (1/2, -1/2)
        let z2 = Lattice::standard(2);
        let proj = z2.projected(&QVector::from_ints(&[1, 1])).unwrap();
        assert_eq!(proj.rank(), 1);
        assert!(proj.contains(&QVector::new(vec![rat(1, 2), rat(-1, 2)])));
        // determinant relation: det(Λ ∩ v^perp) * det(Λ|v^perp) = det Λ
        let sect = z2
            .primitive_sublattice(&[QVector::from_ints(&[1, -1])])
            .unwrap();
        assert_eq!(sect.det_sq() * proj.det_sq(), rint(1));
    }

    #[test]
    fn projected_membership_oracle() {
        // projections of the standard basis always land in Λ | v^perp
        let z3 = Lattice::standard(3);
        let v = QVector::from_ints(&[1, 2, 2]);
        let proj = z3.projected(&v).unwrap();
        let vnorm = v.norm_sq();
        for i in 0..3 {
            let e = QVector::unit(3, i);
            let p = e.sub(&v.scale(&(e.dot(&v) / &vnorm)));
            assert!(proj.contains(&p), "projection of e_{i} not in lattice");
        }
    }

    #[test]
    fn primitive_normal_examples() {
        let z3 = Lattice::standard(3);
        let n1 = z3
            .primitive_normal(&[QVector::unit(3, 0), QVector::unit(3, 1)])
            .unwrap();
        assert_eq!(n1, QVector::unit(3, 2));

        let z2 = Lattice::standard(2);
        let n2 = z2.primitive_normal(&[QVector::from_ints(&[1, 2])]).unwrap();
        assert_eq!(n2, QVector::from_ints(&[2, -1]));

        let n3 = z3
            .primitive_normal(&[
                QVector::from_ints(&[1, 0, 1]),
                QVector::from_ints(&[0, 1, 1]),
            ])
            .unwrap();
        assert_eq!(n3, QVector::from_ints(&[1, 1, -1]));
    }

    #[test]
    fn primitive_normal_det_relation() {
        // det(Λ ∩ H)^2 = |v*|^2 det(Λ)^2 for the hyperplane H = span
        let z3 = Lattice::standard(3);
        let span = [
            QVector::from_ints(&[1, 0, 1]),
            QVector::from_ints(&[0, 1, 1]),
        ];
        let normal = z3.primitive_normal(&span).unwrap();
        let sect = z3.primitive_sublattice(&span).unwrap();
        assert_eq!(sect.det_sq(), normal.norm_sq());
    }

    #[test]
    fn coset_representatives_examples() {
        let z2 = Lattice::standard(2);
        let reps = z2.coset_representatives(2).unwrap();
        assert_eq!(
            reps,
            vec![
                QVector::from_ints(&[0, 0]),
                QVector::from_ints(&[0, 1]),
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[1, 1]),
            ]
        );
        assert_eq!(z2.coset_representatives(1).unwrap(), vec![QVector::zeros(2)]);

        // Z^3 / 4Z^3: 64 representatives, pairwise distinct
        let z3 = Lattice::standard(3);
        let reps = z3.coset_representatives(4).unwrap();
        assert_eq!(reps.len(), 64);
        for (i, a) in reps.iter().enumerate() {
            for b in reps.iter().skip(i + 1) {
                let d = a.sub(b);
                let all_div = d
                    .coords()
                    .iter()
                    .all(|c| c.is_integer() && (c.to_integer() % 4i64).is_zero());
                assert!(!all_div, "representatives {a:?} and {b:?} collide mod 4");
            }
        }
        assert!(z3.coset_representatives(0).is_err());
    }

    #[test]
    fn determinant_matches_coset_index() {
        // |Z^3 / 2Z^3| enumerated directly equals det(2Z^3)
        let two = scaled(3, 2);
        let mut residues = std::collections::BTreeSet::new();
        for x in 0..2i64 {
            for y in 0..2i64 {
                for z in 0..2i64 {
                    residues.insert(vec![x, y, z]);
                }
            }
        }
        // representatives are pairwise distinct mod 2Z^3 by construction
        assert_eq!(rint(residues.len() as i64), two.det_abs().unwrap());
    }

    #[test]
    fn corank_one_completion() {
        let z2 = Lattice::standard(2);
        let sub = z2
            .primitive_sublattice(&[QVector::from_ints(&[2, 1])])
            .unwrap();
        let u = z2.complete_corank_one(&sub).unwrap();
        let m = QMatrix::from_columns(vec![sub.basis_vectors()[0].clone(), u]);
        assert_eq!(m.determinant().unwrap().abs(), rint(1));
    }
}
