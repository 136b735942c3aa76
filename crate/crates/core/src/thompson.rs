//! Thompson's group F as the diagram group of `<x | x² = x>` with base `x`.
//!
//! `π` is the one-cell `(x, x²)`-diagram and `Δ = π ∘ (ε(x) + π) ∘ (π + ε(x))⁻¹ ∘ π⁻¹`.
//! With the product `g·h = Δ_g ∘ Δ_h`, the relations `x_j x_i = x_i x_{j+1}`
//! hold for `x₀ = Δ⁻¹`, `x₁ = π ∘ (ε(x) + x₀) ∘ π⁻¹` and
//! `xₙ = x₀^{-(n-1)} x₁ x₀^{n-1}`; taking `x₀ = Δ` breaks them from `i = 1` on.
//! The skew cube families are built from `Δ` itself.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::diagram::{AtomicFactor, Diagram};
use crate::error::{Error, Result};
use crate::group::{DiagramGroup, GroupElement};
use crate::presentation::{presets, Dir, Presentation, Word};
use crate::wreath::{bfs_length, WordLength};

/// Largest level accepted by [`skew_family`]; the family has `2ⁿ` members.
pub const MAX_SKEW_LEVEL: usize = 16;

/// A word `x_{i₁}^{±1} ⋯` over the infinite generating set of F (or U).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FWord(pub Vec<(u32, i8)>);

impl FWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.0.iter().map(|&(i, _)| i).max()
    }

    pub fn inverse(&self) -> FWord {
        FWord(self.0.iter().rev().map(|&(i, s)| (i, -s)).collect())
    }
}

impl fmt::Display for FWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &(i, s)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{i}")?;
            if s < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Accepts `x3`, `x3^-1`, `x3^2` and `1`, separated by spaces.
impl FromStr for FWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<FWord> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let bad = || Error::Parse {
                line: 1,
                message: format!("bad generator `{tok}`"),
            };
            let body = tok.strip_prefix('x').ok_or_else(bad)?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i64>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let idx: i64 = idx.parse().map_err(|_| bad())?;
            if idx < 0 {
                return Err(Error::NegativeIndex(idx));
            }
            let sign = if exp < 0 { -1 } else { 1 };
            for _ in 0..exp.unsigned_abs() {
                out.push((idx as u32, sign));
            }
        }
        Ok(FWord(out))
    }
}

fn f_presentation() -> Arc<Presentation> {
    presets::f()
}

fn x() -> Word {
    f_presentation().word("x").expect("preset letter")
}

/// The one-cell diagram `x → x²`.
pub fn pi() -> Diagram {
    Diagram::atomic(f_presentation(), x(), AtomicFactor::new(0, 0, Dir::Backward)).expect("x → xx applies to x")
}

fn eps() -> Diagram {
    Diagram::trivial(f_presentation(), x()).expect("x is nonempty")
}

/// `π ∘ (ε(x) + d) ∘ π⁻¹` and `π ∘ (d + ε(x)) ∘ π⁻¹` for a spherical `(x, x)`-diagram `d`.
fn conj_right(d: &Diagram) -> Diagram {
    let p = pi();
    p.concat(&eps().sum(d).unwrap())
        .and_then(|m| m.concat(&p.inverse()))
        .expect("(x, x)-diagrams wrap")
}

fn conj_left(d: &Diagram) -> Diagram {
    let p = pi();
    p.concat(&d.sum(&eps()).unwrap())
        .and_then(|m| m.concat(&p.inverse()))
        .expect("(x, x)-diagrams wrap")
}

/// The 4-cell diagram `Δ`, the mirror image of `x₀`.
pub fn x0_diagram() -> Diagram {
    let p = pi();
    let right = eps().sum(&p).unwrap();
    let left = p.sum(&eps()).unwrap();
    p.concat(&right)
        .and_then(|d| d.concat(&left.inverse()))
        .and_then(|d| d.concat(&p.inverse()))
        .expect("x₀ template is a valid chain")
}

/// Lazily extended list of `x₀, x₁, …`.
#[derive(Debug, Clone, Default)]
pub struct FGenerators {
    gens: Vec<GroupElement>,
}

impl FGenerators {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, i: usize) -> &GroupElement {
        while self.gens.len() <= i {
            let next = match self.gens.len() {
                0 => GroupElement::from_diagram(&x0_diagram().inverse()).expect("spherical"),
                1 => GroupElement::from_diagram(&conj_right(&x0_diagram().inverse())).expect("spherical"),
                n => {
                    let x0 = &self.gens[0];
                    self.gens[n - 1].conjugate_by(x0).expect("same group")
                }
            };
            self.gens.push(next);
        }
        &self.gens[i]
    }
}

pub fn f_generator(i: i64) -> Result<GroupElement> {
    if i < 0 {
        return Err(Error::NegativeIndex(i));
    }
    Ok(FGenerators::new().get(i as usize).clone())
}

pub fn word_to_element(w: &FWord) -> Result<GroupElement> {
    let mut gens = FGenerators::new();
    let mut acc = GroupElement::identity(f_presentation(), x())?;
    for &(i, s) in &w.0 {
        let g = gens.get(i as usize);
        let g = if s < 0 { g.invert() } else { g.clone() };
        acc = acc.multiply(&g)?;
    }
    Ok(acc)
}

/// F with the generating set `{x₀, x₁}`.
pub fn f_group() -> DiagramGroup {
    let mut gens = FGenerators::new();
    DiagramGroup::new(vec![
        ("x0".into(), gens.get(0).clone()),
        ("x1".into(), gens.get(1).clone()),
    ])
    .expect("generators share a base")
}

/// Word length of `g` over `{x₀, x₁}` by breadth-first search.
pub fn f_length(g: &GroupElement, max_radius: usize, max_ball: usize) -> WordLength {
    bfs_length(&f_group(), g, max_radius, max_ball)
}

/// `Γ₀ = π`, `Γ_{k+1} = π ∘ (Γ_k + Γ_k)`: an `(x, x^{2^{k+1}})`-diagram with
/// `2^{k+1} − 1` cells.
pub fn gamma_diagram(k: usize) -> Diagram {
    let p = pi();
    let mut g = p.clone();
    for _ in 0..k {
        g = p.concat(&g.sum(&g).unwrap()).expect("bottom xx meets top xx");
    }
    g
}

/// The `Γ` that spreads `x` over the `2ⁿ` leaves of the level-`n` family:
/// `ε(x)` at level 0 and `Γ_{n−1}` above, with `2ⁿ − 1` cells.
pub fn gamma_for_level(n: usize) -> Diagram {
    if n == 0 {
        eps()
    } else {
        gamma_diagram(n - 1)
    }
}

/// `2ⁿ` pairwise commuting elements with `2n + 4` cells each.
#[derive(Debug, Clone)]
pub struct SkewCubeFamily {
    pub n: usize,
    pub members: Vec<GroupElement>,
}

/// Member `i` carries its copy of `x₀` on leaf `i` (left to right) of
/// [`gamma_for_level`].
pub fn skew_family(n: usize) -> Result<SkewCubeFamily> {
    if n > MAX_SKEW_LEVEL {
        return Err(Error::CapExceeded(format!(
            "skew family level {n} exceeds {MAX_SKEW_LEVEL}"
        )));
    }
    let mut level = vec![x0_diagram()];
    for _ in 0..n {
        let left = level.iter().map(conj_left);
        let right = level.iter().map(conj_right);
        level = left.chain(right).collect();
    }
    let members = level
        .iter()
        .map(GroupElement::from_diagram)
        .collect::<Result<Vec<_>>>()?;
    Ok(SkewCubeFamily { n, members })
}

/// `g₁^{ε₁} ⋯ g_{2ⁿ}^{ε_{2ⁿ}}`.
pub fn signed_product(family: &SkewCubeFamily, signs: &[i8]) -> Result<GroupElement> {
    if signs.len() != family.members.len() {
        return Err(Error::LengthMismatch {
            expected: family.members.len(),
            got: signs.len(),
        });
    }
    let mut acc = family.members[0].identity_like();
    for (g, &s) in family.members.iter().zip(signs) {
        let g = if s < 0 { g.invert() } else { g.clone() };
        acc = acc.multiply(&g)?;
    }
    Ok(acc)
}

/// The subset product `Π_{i ∈ mask} gᵢ`: vertex `mask` of the skew cube.
pub fn cube_vertex(family: &SkewCubeFamily, mask: u64) -> Result<GroupElement> {
    let mut acc = family.members[0].identity_like();
    for (i, g) in family.members.iter().enumerate() {
        if mask >> i & 1 == 1 {
            acc = acc.multiply(g)?;
        }
    }
    Ok(acc)
}
