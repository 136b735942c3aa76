//! `Z wr Z` as the diagram group of
//! `W = <a, b, b₁, b₂, c | ab = a, bc = c, b = b₁, b₁ = b₂, b₂ = b>` with base `ac`.
//!
//! A reduced `(ac, ac)`-diagram has `a → ab` and `c → bc` cells on top, a
//! row of `b`-columns in the middle, each a `(b, b)`-diagram over
//! `<b, b₁, b₂ | b = b₁, b₁ = b₂, b₂ = b>` (a copy of `Z`), and `ab → a`,
//! `bc → c` cells below. The exponent `d` of `t` is the number of `c → bc`
//! cells minus the number of `bc → c` cells. With `p′` cells `ab → a`,
//! column `i` (from the left) carries `φ(t^{i + 1 − p′})`; this indexing makes
//! the map a homomorphism for `φ^β(h) = φ(hβ)`.

use std::sync::Arc;

use crate::diagram::{AtomicFactor, Diagram};
use crate::error::{Error, Result};
use crate::group::{DiagramGroup, GroupElement};
use crate::presentation::{presets, Dir, Presentation};
use crate::wreath::{ball, parr_length_z, Integers, Wreath, WreathElement};

const AB_A: usize = 0;
const BC_C: usize = 1;
/// First of the three `b`-cycle relations in `W`; in `Z₃` they start at 0.
const CYCLE: usize = 2;

fn w() -> Arc<Presentation> {
    presets::w()
}

pub fn zwrz() -> Wreath<Integers> {
    Wreath::new(Integers)
}

/// The integer `n` as the reduced `(b, b)`-diagram `((b=b₁)∘(b₁=b₂)∘(b₂=b))ⁿ`
/// with `3|n|` cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZDiagramValue(pub i64);

impl ZDiagramValue {
    /// `(relation, dir)` steps over `Z₃`, top to bottom.
    fn steps(self) -> Vec<(usize, Dir)> {
        let cycle: [(usize, Dir); 3] = if self.0 >= 0 {
            [(0, Dir::Forward), (1, Dir::Forward), (2, Dir::Forward)]
        } else {
            [(2, Dir::Backward), (1, Dir::Backward), (0, Dir::Backward)]
        };
        cycle
            .iter()
            .copied()
            .cycle()
            .take(3 * self.0.unsigned_abs() as usize)
            .collect()
    }

    pub fn diagram(self) -> Diagram {
        let z3 = presets::z3();
        let factors: Vec<_> = self
            .steps()
            .into_iter()
            .map(|(r, d)| AtomicFactor::new(0, r, d))
            .collect();
        Diagram::from_factors(z3.clone(), z3.base().expect("preset base").clone(), &factors).expect("b-cycles compose")
    }

    fn decode_steps(steps: &[(usize, Dir)]) -> Result<ZDiagramValue> {
        let value = steps
            .iter()
            .map(|&(r, d)| if r == 0 { d.sign() as i64 } else { 0 })
            .sum::<i64>();
        if !steps.len().is_multiple_of(3) || ZDiagramValue(value).steps() != steps {
            return Err(Error::Malformed("column is not a reduced power of the b-cycle".into()));
        }
        Ok(ZDiagramValue(value))
    }

    /// Signed count of `b → b₁` cells of a reduced `(b, b)`-diagram over `Z₃`.
    pub fn decode(d: &Diagram) -> Result<ZDiagramValue> {
        let steps: Vec<_> = d.factors().iter().map(|f| (f.relation, f.dir)).collect();
        Self::decode_steps(&steps)
    }
}

/// The reduced `(ac, ac)`-diagram of `(t^d, φ)`.
pub fn zwrz_to_diagram(e: &WreathElement<i64>) -> GroupElement {
    let d = e.b;
    let lo = e.phi.keys().copied().chain([1, 1 - d]).min().expect("nonempty");
    let hi = e.phi.keys().copied().chain([0, -d]).max().expect("nonempty");
    let width = (hi - lo + 1) as usize;
    let p_low = (1 - lo) as usize;
    let p_top = (1 - lo - d) as usize;
    let q_top = width - p_top;
    let q_low = width - p_low;

    let mut f = Vec::new();
    f.extend(std::iter::repeat_n(AtomicFactor::new(0, AB_A, Dir::Backward), p_top));
    for i in 0..q_top {
        f.push(AtomicFactor::new(1 + p_top + i, BC_C, Dir::Backward));
    }
    for i in 0..width {
        let v = e.phi.get(&(lo + i as i64)).copied().unwrap_or(0);
        for (r, dir) in ZDiagramValue(v).steps() {
            f.push(AtomicFactor::new(1 + i, CYCLE + r, dir));
        }
    }
    f.extend(std::iter::repeat_n(AtomicFactor::new(0, AB_A, Dir::Forward), p_low));
    for i in 0..q_low {
        f.push(AtomicFactor::new(q_low - i, BC_C, Dir::Forward));
    }
    let base = w().base().expect("preset base").clone();
    let diagram = Diagram::from_factors(w(), base, &f).expect("construction is a valid chain");
    GroupElement::from_diagram(&diagram).expect("spherical by construction")
}

/// Inverse of [`zwrz_to_diagram`].
pub fn diagram_to_zwrz(g: &GroupElement) -> Result<WreathElement<i64>> {
    let p = w();
    if !crate::diagram::same_presentation(g.presentation(), &p) || g.base() != p.base().expect("preset base") {
        return Err(Error::PresentationMismatch);
    }
    let d = g.diagram();
    let growing = |f: &AtomicFactor| f.relation < CYCLE && f.dir == Dir::Backward;
    let top_mask: Vec<bool> = d.factors().iter().map(growing).collect();
    let (top, rest) = d.split_prefix(&top_mask)?;
    let mid_mask: Vec<bool> = rest.factors().iter().map(|f| f.relation >= CYCLE).collect();
    let (middle, bottom) = rest.split_prefix(&mid_mask)?;
    if bottom
        .factors()
        .iter()
        .any(|f| f.relation >= CYCLE || f.dir != Dir::Forward)
    {
        return Err(Error::Malformed("growing cells below the b-columns".into()));
    }
    let count = |dg: &Diagram, rel: usize| dg.factors().iter().filter(|f| f.relation == rel).count() as i64;
    let q_top = count(&top, BC_C);
    let (p_low, q_low) = (count(&bottom, AB_A), count(&bottom, BC_C));
    let width = middle.top().len() - 2;
    let mut columns = vec![Vec::new(); width];
    for f in middle.factors() {
        columns[f.offset - 1].push((f.relation - CYCLE, f.dir));
    }
    let lo = 1 - p_low;
    let mut phi = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        let v = ZDiagramValue::decode_steps(col)?.0;
        phi.push((lo + i as i64, v));
    }
    Ok(zwrz().element(q_top - q_low, phi))
}

/// The images of `t` and `a`, generating `D(W, ac)`.
pub fn w_group() -> DiagramGroup {
    let z = zwrz();
    DiagramGroup::new(vec![
        ("t".into(), zwrz_to_diagram(&z.base(1))),
        ("a".into(), zwrz_to_diagram(&z.lamp())),
    ])
    .expect("images share a base")
}

#[derive(Debug, Clone)]
pub struct PropBRow {
    pub element: WreathElement<i64>,
    pub length: usize,
    pub cells: usize,
}

/// Word length against cell count over a ball of `Z wr Z`.
#[derive(Debug, Clone)]
pub struct PropBReport {
    pub radius: usize,
    pub rows: Vec<PropBRow>,
    /// Maximum of `#(image) / ℓ` over non-identity elements.
    pub max_cells_per_length: f64,
    /// Maximum of `ℓ / #(image)` over non-identity elements.
    pub max_length_per_cells: f64,
}

pub fn propb_report(radius: usize, cap: usize) -> Result<PropBReport> {
    let z = zwrz();
    let b = ball(&z, radius, cap)?;
    let mut rows = Vec::with_capacity(b.len());
    let (mut up, mut down) = (0.0f64, 0.0f64);
    for (e, length) in b.elements() {
        debug_assert_eq!(parr_length_z(e), length as u64);
        let cells = zwrz_to_diagram(e).cell_count();
        if length > 0 {
            up = up.max(cells as f64 / length as f64);
            down = down.max(length as f64 / cells as f64);
        }
        rows.push(PropBRow {
            element: e.clone(),
            length,
            cells,
        });
    }
    Ok(PropBReport {
        radius,
        rows,
        max_cells_per_length: up,
        max_length_per_cells: down,
    })
}
