use super::expr::GroupExpr;
use super::tower::{classify, stable_preimage, TowerGroup};
use crate::abelian::lattice::{preimage, same_lattice};
use crate::abelian::GroupHom;
use crate::error::{Error, Result};

/// Outcome of a successful exactness check on a sequence of towers.
#[derive(Clone, Debug)]
pub struct LesReport {
    pub labels: Vec<String>,
    pub groups: Vec<GroupExpr>,
}

impl LesReport {
    pub fn group(&self, label: &str) -> Option<&GroupExpr> {
        self.labels.iter().position(|l| l == label).map(|i| &self.groups[i])
    }
}

/// Does `β ∘ E_src ≡ E_dst ∘ β` hold (modulo the target relations)?
pub fn commutes(map: &GroupHom, src: &TowerGroup, dst: &TowerGroup) -> bool {
    let lhs = map.compose(&src.endo);
    let rhs = dst.endo.compose(map);
    let mut diff = lhs.matrix().sub(rhs.matrix());
    diff.reduce_rows_mod(dst.orders());
    diff.is_zero()
}

/// Passes a sequence `T₀ → T₁ → … → T_n` of towers to the direct limit, checks that every map
/// commutes with the endomorphisms, and that the limit sequence is exact at every interior node.
///
/// Exactness at `B` (for `A →α B →β C`) is decided on the lattice of coordinate vectors of `B`:
/// `x` lies in the limit image iff `E_B^N x ∈ im α + rel(B)` for some `N`, and in the limit kernel
/// iff `E_C^N β x ∈ rel(C)` for some `N`. Both conditions describe ascending chains of lattices
/// that are iterated until they stop growing; the node is exact iff the two limits coincide.
pub fn limit_les(terms: &[TowerGroup], maps: &[GroupHom]) -> Result<LesReport> {
    let labels: Vec<String> = (0..terms.len()).map(|i| format!("term {i}")).collect();
    limit_les_labeled(terms, maps, &labels)
}

pub fn limit_les_labeled(terms: &[TowerGroup], maps: &[GroupHom], labels: &[String]) -> Result<LesReport> {
    assert_eq!(maps.len() + 1, terms.len().max(1), "one map between each pair of consecutive terms");
    assert_eq!(labels.len(), terms.len(), "one label per term");
    for (i, m) in maps.iter().enumerate() {
        assert_eq!(
            m.matrix().shape(),
            (terms[i + 1].group.ngens(), terms[i].group.ngens()),
            "map {i} does not match its terms"
        );
        if !commutes(m, &terms[i], &terms[i + 1]) {
            return Err(Error::NotACochainMap(format!(
                "map {} → {} does not commute with the endomorphisms",
                labels[i],
                labels[i + 1]
            )));
        }
    }
    for node in 1..terms.len().saturating_sub(1) {
        if !exact_at(&terms[node], &maps[node - 1], &maps[node], &terms[node + 1]) {
            return Err(Error::ExactnessFailure { node, label: labels[node].clone() });
        }
    }
    let groups = terms.iter().map(classify).collect();
    Ok(LesReport { labels: labels.to_vec(), groups })
}

fn exact_at(b: &TowerGroup, alpha: &GroupHom, beta: &GroupHom, c: &TowerGroup) -> bool {
    let e = b.matrix();
    let image = stable_preimage(e, alpha.matrix().hstack(&b.group.order_matrix()));
    let kernel = stable_preimage(e, preimage(beta.matrix(), &c.group.order_matrix()));
    same_lattice(&image, &kernel)
}

/// Is the limit map injective? (Its kernel is the set of elements mapping to something that
/// eventually dies.)
pub fn limit_injective(map: &GroupHom, src: &TowerGroup, dst: &TowerGroup) -> bool {
    let dies_after = stable_preimage(src.matrix(), preimage(map.matrix(), &dst.eventual_kernel()));
    same_lattice(&dies_after, &src.eventual_kernel())
}
