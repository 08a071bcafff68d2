use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::lattice::{self, kernel_with_left_inverse};
use super::snf::snf;
use crate::error::{Error, Result};
use crate::IntMatrix;

/// A finitely generated abelian group presented as a subquotient `Z / B` of an ambient lattice
/// `ℤⁿ`, where `Z = {v : test · v = 0}` and `B` is spanned by `relations`.
///
/// The generators are chosen from the Smith form so that the group is
/// `ℤ/o₁ ⊕ … ⊕ ℤ/o_g` with `o₁ | o₂ | …` the torsion orders followed by zeros (free summands).
#[derive(Clone, PartialEq, Eq)]
pub struct FgAbGroup {
    orders: Vec<BigInt>,
    gens: IntMatrix,
    coords: IntMatrix,
    relations: IntMatrix,
    test: IntMatrix,
}

impl FgAbGroup {
    /// `ker(test) / span(relations)`. The relations must lie in the kernel of `test`.
    pub fn subquotient(test: &IntMatrix, relations: &IntMatrix) -> Result<Self> {
        let n = test.cols();
        assert_eq!(relations.rows(), n, "relations live in the ambient lattice");
        if !test.mul(relations).is_zero() {
            return Err(Error::NotWellDefined("relations are not cocycles".into()));
        }
        let (z, zl) = if test.rows() == 0 {
            (IntMatrix::identity(n), IntMatrix::identity(n))
        } else {
            kernel_with_left_inverse(test)
        };
        let x = zl.mul(relations);
        let s = snf(&x);
        let r = s.rank();
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for i in 0..z.cols() {
            if i < r {
                if s.invariant_factors[i].is_one() {
                    continue;
                }
                orders.push(s.invariant_factors[i].clone());
            } else {
                orders.push(BigInt::zero());
            }
            kept.push(i);
        }
        let gens = z.mul(&s.u_inv.select_columns(&kept));
        let coords = s.u.select_rows(&kept).mul(&zl);
        Ok(FgAbGroup { orders, gens, coords, relations: relations.clone(), test: test.clone() })
    }

    /// `ℤᵐ / im A` for `A: ℤⁿ → ℤᵐ`.
    pub fn cokernel(a: &IntMatrix) -> Self {
        Self::subquotient(&IntMatrix::zeros(0, a.rows()), a).expect("no cocycle condition")
    }

    /// `ℤ/o₁ ⊕ ℤ/o₂ ⊕ …` with order 0 meaning a free summand.
    pub fn from_orders(orders: &[i64]) -> Self {
        let d: Vec<BigInt> = orders.iter().map(|&o| BigInt::from(o)).collect();
        Self::cokernel(&IntMatrix::diagonal(&d))
    }

    pub fn trivial() -> Self {
        Self::cokernel(&IntMatrix::zeros(0, 0))
    }

    /// The same group presented on its own coordinates, `ℤ^g / diag(orders)`.
    pub fn abstract_form(&self) -> Self {
        Self::cokernel(&IntMatrix::diagonal(&self.orders))
    }

    pub fn ambient_dim(&self) -> usize {
        self.test.cols()
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.orders.iter().filter(|o| !o.is_zero()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|o| o.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.orders == other.orders
    }

    /// Ambient representatives of the generators (columns).
    pub fn gens(&self) -> &IntMatrix {
        &self.gens
    }

    /// Maps an ambient cocycle to its coordinates (before reduction).
    pub fn coords_matrix(&self) -> &IntMatrix {
        &self.coords
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn cocycle_test(&self) -> &IntMatrix {
        &self.test
    }

    /// `diag(orders)`: the relation lattice on coordinates.
    pub fn order_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.orders)
    }

    pub fn is_cocycle(&self, v: &[BigInt]) -> bool {
        self.test.mul_vec(v).iter().all(Zero::is_zero)
    }

    /// Reduced coordinates of an ambient cocycle.
    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut c = self.coords.mul_vec(v);
        self.reduce(&mut c);
        c
    }

    pub fn reduce(&self, c: &mut [BigInt]) {
        for (x, o) in c.iter_mut().zip(&self.orders) {
            if !o.is_zero() {
                *x = x.mod_floor(o);
            }
        }
    }

    pub(crate) fn reduce_matrix(&self, m: &mut IntMatrix) {
        m.reduce_rows_mod(&self.orders);
    }

    /// Quotient by the subgroup generated by the given ambient cocycles (columns).
    pub fn quotient_by(&self, vectors: &IntMatrix) -> Result<Self> {
        Self::subquotient(&self.test, &self.relations.hstack(vectors))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({self})")
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.torsion().iter().map(|t| format!("Z_{t}")).collect();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" + "))
    }
}

/// A homomorphism between two presented groups, acting on generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub domain: Arc<FgAbGroup>,
    pub codomain: Arc<FgAbGroup>,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Builds a hom from a coordinate matrix, checking that it respects the torsion relations.
    pub fn new(domain: Arc<FgAbGroup>, codomain: Arc<FgAbGroup>, matrix: IntMatrix) -> Result<Self> {
        assert_eq!(matrix.shape(), (codomain.ngens(), domain.ngens()), "hom matrix shape");
        for (j, o) in domain.orders().iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            let mut col: Vec<BigInt> = matrix.column(j).iter().map(|x| x * o).collect();
            codomain.reduce(&mut col);
            if col.iter().any(|x| !x.is_zero()) {
                return Err(Error::NotWellDefined(format!(
                    "generator {j} of order {o} does not map to an element killed by {o}"
                )));
            }
        }
        let mut matrix = matrix;
        codomain.reduce_matrix(&mut matrix);
        Ok(GroupHom { domain, codomain, matrix })
    }

    pub fn identity(g: Arc<FgAbGroup>) -> Self {
        let n = g.ngens();
        GroupHom { domain: g.clone(), codomain: g, matrix: IntMatrix::identity(n) }
    }

    pub fn zero(domain: Arc<FgAbGroup>, codomain: Arc<FgAbGroup>) -> Self {
        let m = IntMatrix::zeros(codomain.ngens(), domain.ngens());
        GroupHom { domain, codomain, matrix: m }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.mul_vec(x);
        self.codomain.reduce(&mut y);
        y
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &GroupHom) -> GroupHom {
        assert!(first.codomain.is_isomorphic(&self.domain), "composition of mismatched homs");
        let mut m = self.matrix.mul(&first.matrix);
        self.codomain.reduce_matrix(&mut m);
        GroupHom { domain: first.domain.clone(), codomain: self.codomain.clone(), matrix: m }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Generators (coordinate columns) of the kernel, including the domain relations.
    pub fn kernel_lattice(&self) -> IntMatrix {
        lattice::preimage(&self.matrix, &self.codomain.order_matrix())
    }

    pub fn is_injective(&self) -> bool {
        lattice::is_sublattice(&self.kernel_lattice(), &self.domain.order_matrix())
    }

    pub fn is_surjective(&self) -> bool {
        let span = self.matrix.hstack(&self.codomain.order_matrix());
        lattice::same_lattice(&span, &IntMatrix::identity(self.codomain.ngens()))
    }

    /// The cokernel as an abstract group.
    pub fn cokernel(&self) -> FgAbGroup {
        FgAbGroup::cokernel(&self.matrix.hstack(&self.codomain.order_matrix()))
    }
}

/// The hom induced on subquotients by an ambient cochain map `f` (codomain ambient × domain ambient).
///
/// Fails with [`Error::NotWellDefined`] unless `f` sends cocycles to cocycles and
/// coboundaries to coboundaries.
pub fn induced_hom(f: &IntMatrix, dom: &Arc<FgAbGroup>, cod: &Arc<FgAbGroup>) -> Result<GroupHom> {
    assert_eq!(f.shape(), (cod.ambient_dim(), dom.ambient_dim()), "ambient map shape");
    let img = f.mul(dom.gens());
    if !cod.cocycle_test().mul(&img).is_zero() {
        return Err(Error::NotWellDefined("a cocycle maps outside the cocycle lattice".into()));
    }
    let rel = f.mul(dom.relations());
    if !cod.cocycle_test().mul(&rel).is_zero() {
        return Err(Error::NotWellDefined("a relation maps outside the cocycle lattice".into()));
    }
    let mut rc = cod.coords_matrix().mul(&rel);
    cod.reduce_matrix(&mut rc);
    if !rc.is_zero() {
        return Err(Error::NotWellDefined("a relation maps to a nonzero class".into()));
    }
    let mut m = cod.coords_matrix().mul(&img);
    cod.reduce_matrix(&mut m);
    Ok(GroupHom { domain: dom.clone(), codomain: cod.clone(), matrix: m })
}
