//! The plane cell complex underlying a diagram.
//!
//! Edges carry a label and remember which cell produced them (`None` for
//! edges of the top path) and which cell consumed them (`None` for edges of
//! the bottom path). Cells list their top and bottom edges left to right.
//! This is all the structure needed to recover the diagram up to isotopy,
//! so every geometric query (top cells, dipoles, ancestors) is answered here.

use crate::error::{Error, Result};
use crate::presentation::{Dir, Letter, Presentation, Word};

use super::AtomicFactor;

pub type CellId = usize;
pub type EdgeId = usize;
pub type VertexId = usize;

#[derive(Debug, Clone)]
pub struct Edge {
    pub label: Letter,
    pub tail: VertexId,
    pub head: VertexId,
    pub producer: Option<CellId>,
    pub consumer: Option<CellId>,
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub relation: usize,
    pub dir: Dir,
    pub top: Vec<EdgeId>,
    pub bottom: Vec<EdgeId>,
}

#[derive(Debug, Clone)]
pub struct PlaneComplex {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    pub cells: Vec<Cell>,
    pub top: Vec<EdgeId>,
    pub bottom: Vec<EdgeId>,
}

/// One step of a decomposition: which cell was peeled off, and as which factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub cell: CellId,
    pub factor: AtomicFactor,
}

impl PlaneComplex {
    /// Glue the atomic diagrams named by `factors` onto the interval labelled
    /// `top`. Fails if some factor does not apply to the word produced so far.
    pub fn build(p: &Presentation, top: &Word, factors: &[AtomicFactor]) -> Result<Self> {
        let n = top.len();
        let mut edges: Vec<Edge> = top
            .letters()
            .iter()
            .enumerate()
            .map(|(i, &label)| Edge {
                label,
                tail: i,
                head: i + 1,
                producer: None,
                consumer: None,
            })
            .collect();
        let mut vertex_count = n + 1;
        let top_path: Vec<EdgeId> = (0..n).collect();
        let mut path = top_path.clone();
        let mut cells = Vec::with_capacity(factors.len());

        for (step, f) in factors.iter().enumerate() {
            let rel = p.relation(f.relation)?;
            let source = rel.source(f.dir);
            let target = rel.target(f.dir);
            let fits = f.offset + source.len() <= path.len()
                && path[f.offset..f.offset + source.len()]
                    .iter()
                    .zip(source.letters())
                    .all(|(&e, &l)| edges[e].label == l);
            if !fits {
                let word = Word(path.iter().map(|&e| edges[e].label).collect());
                return Err(Error::FactorMismatch {
                    step,
                    offset: f.offset,
                    side: p.render_word(source),
                    word: p.render_word(&word),
                });
            }
            let id = cells.len();
            let cell_top: Vec<EdgeId> = path[f.offset..f.offset + source.len()].to_vec();
            let start = edges[cell_top[0]].tail;
            let end = edges[*cell_top.last().unwrap()].head;
            for &e in &cell_top {
                edges[e].consumer = Some(id);
            }
            let mut cell_bottom = Vec::with_capacity(target.len());
            let mut tail = start;
            for (i, &label) in target.letters().iter().enumerate() {
                let head = if i + 1 == target.len() {
                    end
                } else {
                    vertex_count += 1;
                    vertex_count - 1
                };
                cell_bottom.push(edges.len());
                edges.push(Edge {
                    label,
                    tail,
                    head,
                    producer: Some(id),
                    consumer: None,
                });
                tail = head;
            }
            path.splice(f.offset..f.offset + source.len(), cell_bottom.iter().copied());
            cells.push(Cell {
                relation: f.relation,
                dir: f.dir,
                top: cell_top,
                bottom: cell_bottom,
            });
        }

        Ok(PlaneComplex {
            vertex_count,
            edges,
            cells,
            top: top_path,
            bottom: path,
        })
    }

    pub fn label_of(&self, path: &[EdgeId]) -> Word {
        Word(path.iter().map(|&e| self.edges[e].label).collect())
    }

    /// Peel cells off `start`, always taking the top cell whose top path ends
    /// furthest right. Only cells accepted by `include` are considered; the
    /// returned path is where the peeling stopped.
    ///
    /// Cells whose top edges never reach the path are silently left out, so
    /// callers that need every included cell must compare counts.
    pub fn decompose_from(&self, start: &[EdgeId], include: impl Fn(CellId) -> bool) -> (Vec<Step>, Vec<EdgeId>) {
        const OFF: usize = usize::MAX;
        let mut pos = vec![OFF; self.edges.len()];
        for (i, &e) in start.iter().enumerate() {
            pos[e] = i;
        }
        let mut pending = vec![OFF; self.cells.len()];
        let mut ready = Vec::new();
        for (c, cell) in self.cells.iter().enumerate() {
            if !include(c) {
                continue;
            }
            let missing = cell.top.iter().filter(|&&e| pos[e] == OFF).count();
            pending[c] = missing;
            if missing == 0 {
                ready.push(c);
            }
        }

        let mut path = start.to_vec();
        let mut steps = Vec::new();
        while !ready.is_empty() {
            // Top cells occupy disjoint intervals, so offsets are distinct.
            let (slot, _) = ready
                .iter()
                .enumerate()
                .max_by_key(|(_, &c)| pos[self.cells[c].top[0]])
                .unwrap();
            let c = ready.swap_remove(slot);
            let cell = &self.cells[c];
            let offset = pos[cell.top[0]];
            debug_assert_eq!(path[offset..offset + cell.top.len()], cell.top[..]);
            for &e in &cell.top {
                pos[e] = OFF;
            }
            path.splice(offset..offset + cell.top.len(), cell.bottom.iter().copied());
            for (i, &e) in path.iter().enumerate().skip(offset) {
                pos[e] = i;
            }
            for &e in &cell.bottom {
                if let Some(next) = self.edges[e].consumer {
                    if pending[next] != OFF {
                        pending[next] -= 1;
                        if pending[next] == 0 {
                            ready.push(next);
                        }
                    }
                }
            }
            steps.push(Step {
                cell: c,
                factor: AtomicFactor {
                    offset,
                    relation: cell.relation,
                    dir: cell.dir,
                },
            });
        }
        (steps, path)
    }

    /// Rightmost decomposition of the whole complex.
    pub fn rightmost(&self) -> Vec<Step> {
        self.decompose_from(&self.top, |_| true).0
    }

    /// Is `(upper, lower)` a dipole: the bottom path of `upper` is exactly the
    /// top path of `lower`, and `lower` undoes `upper`.
    pub fn is_dipole(&self, upper: CellId, lower: CellId) -> bool {
        let a = &self.cells[upper];
        let b = &self.cells[lower];
        a.bottom == b.top && a.relation == b.relation && a.dir == b.dir.flip()
    }

    /// All dipoles among cells accepted by `alive`, ordered by upper cell id.
    pub fn dipoles_among(&self, alive: impl Fn(CellId) -> bool) -> Vec<(CellId, CellId)> {
        let mut out = Vec::new();
        for (c, cell) in self.cells.iter().enumerate() {
            if !alive(c) {
                continue;
            }
            if let Some(next) = self.edges[cell.bottom[0]].consumer {
                if alive(next) && self.is_dipole(c, next) {
                    out.push((c, next));
                }
            }
        }
        out
    }

    /// Remove a dipole: drop both cells and glue the top path of `upper` onto
    /// the bottom path of `lower`. Vertex data is not maintained.
    pub fn cancel(&mut self, upper: CellId, lower: CellId) {
        let glue_to = self.cells[upper].top.clone();
        let glue_from = self.cells[lower].bottom.clone();
        for (&keep, &drop) in glue_to.iter().zip(&glue_from) {
            let consumer = self.edges[drop].consumer;
            self.edges[keep].consumer = consumer;
            let slot = match consumer {
                Some(c) => &mut self.cells[c].top,
                None => &mut self.bottom,
            };
            let i = slot.iter().position(|&e| e == drop).expect("glued edge is on a path");
            slot[i] = keep;
        }
    }

    /// Direct ancestors of `cell`: cells whose bottom path shares an edge with
    /// the top path of `cell`.
    pub fn direct_ancestors(&self, cell: CellId) -> impl Iterator<Item = CellId> + '_ {
        let mut seen: Vec<CellId> = Vec::new();
        self.cells[cell].top.iter().filter_map(move |&e| {
            let p = self.edges[e].producer?;
            if seen.contains(&p) {
                None
            } else {
                seen.push(p);
                Some(p)
            }
        })
    }

    /// Membership mask of `cell` together with all its ancestors.
    pub fn ancestor_closure(&self, cell: CellId) -> Vec<bool> {
        let mut mask = vec![false; self.cells.len()];
        let mut stack = vec![cell];
        mask[cell] = true;
        while let Some(c) = stack.pop() {
            for &e in &self.cells[c].top {
                if let Some(p) = self.edges[e].producer {
                    if !mask[p] {
                        mask[p] = true;
                        stack.push(p);
                    }
                }
            }
        }
        mask
    }
}
