//! Diagram groups `D(P, w)`: reduced `(w, w)`-diagrams under concatenation
//! followed by dipole removal, plus the diagram metric.

use std::fmt;
use std::sync::Arc;

use crate::diagram::{same_presentation, CanonicalCode, Diagram};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Word};
use crate::wreath::GroupOracle;

/// An element of a diagram group. The diagram is always reduced, so
/// equality is equality of canonical factor sequences.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    diagram: Diagram,
}

impl GroupElement {
    pub fn identity(p: Arc<Presentation>, base: Word) -> Result<Self> {
        Ok(GroupElement {
            diagram: Diagram::trivial(p, base)?,
        })
    }

    /// Reduce a spherical diagram into a group element.
    pub fn from_diagram(d: &Diagram) -> Result<Self> {
        if !d.is_spherical() {
            let p = d.presentation();
            return Err(Error::NotSpherical {
                top: p.render_word(d.top()),
                bottom: p.render_word(d.bottom()),
            });
        }
        Ok(GroupElement { diagram: d.reduce() })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn into_diagram(self) -> Diagram {
        self.diagram
    }

    pub fn base(&self) -> &Word {
        self.diagram.top()
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.diagram.presentation()
    }

    /// `#(g)`: cells of the reduced diagram.
    pub fn cell_count(&self) -> usize {
        self.diagram.cell_count()
    }

    pub fn is_identity(&self) -> bool {
        self.diagram.is_trivial()
    }

    pub fn code(&self) -> CanonicalCode {
        self.diagram.code()
    }

    pub fn identity_like(&self) -> Self {
        GroupElement {
            diagram: Diagram::trivial(self.presentation().clone(), self.base().clone()).expect("bases are nonempty"),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !same_presentation(self.presentation(), other.presentation()) {
            return Err(Error::PresentationMismatch);
        }
        if self.base() != other.base() {
            let p = self.presentation();
            return Err(Error::BaseMismatch(
                p.render_word(self.base()),
                p.render_word(other.base()),
            ));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(GroupElement {
            diagram: self.diagram.concat_reduced(&other.diagram)?,
        })
    }

    /// The mirror image of a reduced diagram is reduced.
    pub fn invert(&self) -> Self {
        GroupElement {
            diagram: self.diagram.inverse(),
        }
    }

    /// `g^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Self {
        let step = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = self.identity_like();
        for _ in 0..n.unsigned_abs() {
            acc = acc.multiply(&step).expect("powers share a base");
        }
        acc
    }

    /// `h⁻¹ g h`.
    pub fn conjugate_by(&self, h: &Self) -> Result<Self> {
        h.invert().multiply(self)?.multiply(h)
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.multiply(other)? == other.multiply(self)?)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({})", self.code())
    }
}

/// Number of cells of the reduced diagram of `g1⁻¹ g2`.
pub fn dist_d(g1: &GroupElement, g2: &GroupElement) -> Result<usize> {
    Ok(g1.invert().multiply(g2)?.cell_count())
}

/// `Σ_{i,j} c_i c_j dist_d(g_i, g_j)`, exactly. For coefficients summing to
/// zero the result is never positive.
pub fn cnd_form(gs: &[GroupElement], cs: &[i64]) -> Result<i128> {
    if gs.len() != cs.len() {
        return Err(Error::LengthMismatch {
            expected: gs.len(),
            got: cs.len(),
        });
    }
    let total: i64 = cs.iter().sum();
    if total != 0 {
        return Err(Error::CoefficientSum(total));
    }
    let mut acc: i128 = 0;
    for i in 0..gs.len() {
        for j in (i + 1)..gs.len() {
            let d = dist_d(&gs[i], &gs[j])? as i128;
            acc += 2 * cs[i] as i128 * cs[j] as i128 * d;
        }
    }
    Ok(acc)
}

/// A finitely generated subgroup of a diagram group, seen as a Cayley-graph
/// oracle for breadth-first searches.
#[derive(Debug, Clone)]
pub struct DiagramGroup {
    identity: GroupElement,
    generators: Vec<GroupElement>,
    names: Vec<String>,
}

impl DiagramGroup {
    pub fn new(generators: Vec<(String, GroupElement)>) -> Result<Self> {
        let identity = generators
            .first()
            .map(|(_, g)| g.identity_like())
            .ok_or_else(|| Error::Degenerate("no generators".into()))?;
        for (_, g) in &generators {
            identity.check(g)?;
        }
        let (names, generators) = generators.into_iter().unzip();
        Ok(DiagramGroup {
            identity,
            generators,
            names,
        })
    }
}

impl GroupOracle for DiagramGroup {
    type Elem = GroupElement;

    fn identity(&self) -> GroupElement {
        self.identity.clone()
    }

    fn generators(&self) -> Vec<GroupElement> {
        self.generators.clone()
    }

    fn generator_names(&self) -> Vec<String> {
        self.names.clone()
    }

    fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        a.multiply(b).expect("oracle elements share a base")
    }

    fn invert(&self, a: &GroupElement) -> GroupElement {
        a.invert()
    }
}
