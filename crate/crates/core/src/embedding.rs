//! The cell-indicator embedding of a diagram group into Hilbert space.
//!
//! Gluing all reduced diagrams with top `w` along common prefixes gives a
//! rooted 2-tree whose 2-cells form an orthonormal basis. A cell of a
//! reduced diagram is identified with a cell of the tree by the smallest
//! prefix containing it: its ancestor closure. That prefix is named by its
//! canonical code, so the tree is never built; `φ(g)` is the set of
//! addresses of the cells of `g`, and squared distances are sizes of
//! symmetric differences.

use std::collections::BTreeSet;

use crate::diagram::{CanonicalCode, CellId, Diagram};
use crate::error::{Error, Result};
use crate::group::{dist_d, GroupElement};

/// A cell of the rooted 2-tree, named by the code of its ancestor closure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellAddress(pub CanonicalCode);

/// Support of the 0/1 vector `φ(g)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CellAddressSet(pub BTreeSet<CellAddress>);

impl CellAddressSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: &CellAddress) -> bool {
        self.0.contains(a)
    }

    /// `‖φ(g₁) − φ(g₂)‖²`.
    pub fn sq_distance(&self, other: &CellAddressSet) -> usize {
        self.0.symmetric_difference(&other.0).count()
    }
}

pub fn cell_address(d: &Diagram, cell: CellId) -> Result<CellAddress> {
    let cx = d.complex();
    if cell >= cx.cells.len() {
        return Err(Error::InvalidCell(cell));
    }
    let closure = cx.ancestor_closure(cell);
    let (steps, _) = cx.decompose_from(&cx.top, |c| closure[c]);
    debug_assert_eq!(steps.last().map(|s| s.cell), Some(cell));
    let factors: Vec<_> = steps.iter().map(|s| s.factor).collect();
    Ok(CellAddress(CanonicalCode::new(d.presentation(), d.top(), &factors)))
}

/// Addresses of every cell of `d`, indexed by cell id.
pub fn cell_addresses(d: &Diagram) -> Vec<CellAddress> {
    (0..d.cell_count())
        .map(|c| cell_address(d, c).expect("cell ids in range"))
        .collect()
}

pub fn phi(g: &GroupElement) -> CellAddressSet {
    CellAddressSet(cell_addresses(g.diagram()).into_iter().collect())
}

pub fn sq_dist(g1: &GroupElement, g2: &GroupElement) -> Result<usize> {
    // Validates that both live in the same group.
    g1.multiply(&g2.identity_like())?;
    g1.identity_like().multiply(g2)?;
    Ok(phi(g1).sq_distance(&phi(g2)))
}

/// `Δᵢ = Ψ ∘ Δ̄ᵢ` with `Ψ` the largest common prefix.
#[derive(Debug, Clone)]
pub struct GcdSplit {
    pub prefix: Diagram,
    pub rest1: Diagram,
    pub rest2: Diagram,
}

pub fn gcd_prefix(g1: &GroupElement, g2: &GroupElement) -> Result<GcdSplit> {
    dist_d(g1, g2)?;
    let a1 = cell_addresses(g1.diagram());
    let a2 = cell_addresses(g2.diagram());
    let s1: BTreeSet<&CellAddress> = a1.iter().collect();
    let s2: BTreeSet<&CellAddress> = a2.iter().collect();
    let mask1: Vec<bool> = a1.iter().map(|a| s2.contains(a)).collect();
    let mask2: Vec<bool> = a2.iter().map(|a| s1.contains(a)).collect();
    let (prefix, rest1) = g1.diagram().split_prefix(&mask1)?;
    let (prefix2, rest2) = g2.diagram().split_prefix(&mask2)?;
    if prefix != prefix2 {
        return Err(Error::Malformed(
            "common cells do not form the same prefix in both diagrams".into(),
        ));
    }
    Ok(GcdSplit { prefix, rest1, rest2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::random::random_diagram;
    use crate::diagram::AtomicFactor;
    use crate::presentation::{presets, Dir, Word};
    use crate::thompson::{f_generator, word_to_element, FWord};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_f(rng: &mut ChaCha8Rng, max_len: usize) -> GroupElement {
        let len = rng.gen_range(0..=max_len);
        let letters = (0..len)
            .map(|_| (rng.gen_range(0..2u32), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        word_to_element(&FWord(letters)).unwrap()
    }

    #[test]
    fn single_cell_address_is_its_code() {
        let f = presets::f();
        let d = Diagram::atomic(f.clone(), f.word("x").unwrap(), AtomicFactor::new(0, 0, Dir::Backward)).unwrap();
        assert_eq!(cell_address(&d, 0).unwrap().0, d.code());
        assert_eq!(cell_address(&d, 1).unwrap_err(), Error::InvalidCell(1));
    }

    #[test]
    fn padding_position_changes_address() {
        let f = presets::f();
        let pi = Diagram::atomic(f.clone(), f.word("x").unwrap(), AtomicFactor::new(0, 0, Dir::Backward)).unwrap();
        let e = Diagram::trivial(f.clone(), f.word("x").unwrap()).unwrap();
        let left = pi.sum(&e).unwrap();
        let right = e.sum(&pi).unwrap();
        assert_ne!(cell_address(&left, 0).unwrap(), cell_address(&right, 0).unwrap());
    }

    #[test]
    fn addresses_survive_extension_below() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = presets::f();
        let top: Word = f.word("x").unwrap();
        for _ in 0..100 {
            let d = random_diagram(&f, &top, rng.gen_range(0..10), &mut rng).reduce();
            let ext = random_diagram(&f, d.bottom(), rng.gen_range(1..8), &mut rng);
            let whole = d.concat(&ext).unwrap();
            let inner: BTreeSet<_> = cell_addresses(&d).into_iter().collect();
            let outer: BTreeSet<_> = cell_addresses(&whole).into_iter().collect();
            assert!(inner.is_subset(&outer));
            assert_eq!(inner.len(), d.cell_count());
        }
    }

    #[test]
    fn phi_of_generators() {
        let x0 = f_generator(0).unwrap();
        assert!(phi(&x0.identity_like()).is_empty());
        assert_eq!(phi(&x0).len(), 4);
        assert_eq!(sq_dist(&x0, &x0).unwrap(), 0);
        assert_eq!(sq_dist(&x0.identity_like(), &x0).unwrap(), 4);
    }

    #[test]
    fn sq_dist_matches_dist_d() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let g1 = random_f(&mut rng, 12);
            let g2 = random_f(&mut rng, 12);
            assert_eq!(phi(&g1).len(), g1.cell_count());
            assert_eq!(sq_dist(&g1, &g2).unwrap(), dist_d(&g1, &g2).unwrap());
        }
    }

    #[test]
    fn gcd_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let x0 = f_generator(0).unwrap();
        let g = x0.multiply(&f_generator(1).unwrap()).unwrap();
        let same = gcd_prefix(&g, &g).unwrap();
        assert_eq!(&same.prefix, g.diagram());
        assert!(same.rest1.is_trivial() && same.rest2.is_trivial());
        let with_one = gcd_prefix(&g.identity_like(), &g).unwrap();
        assert!(with_one.prefix.is_trivial());

        for _ in 0..200 {
            let g1 = random_f(&mut rng, 10);
            let g2 = random_f(&mut rng, 10);
            let split = gcd_prefix(&g1, &g2).unwrap();
            let n = dist_d(&g1, &g2).unwrap();
            assert_eq!(split.rest1.cell_count() + split.rest2.cell_count(), n);
            let between = split.rest1.inverse().concat(&split.rest2).unwrap();
            assert!(between.is_reduced());
            assert_eq!(split.prefix.concat(&split.rest1).unwrap(), *g1.diagram());
            // No common cells below the common prefix.
            let common: BTreeSet<_> = phi(&g1).0.intersection(&phi(&g2).0).cloned().collect();
            let prefix_cells: BTreeSet<_> = cell_addresses(&split.prefix).into_iter().collect();
            assert_eq!(common, prefix_cells);
        }
    }
}
