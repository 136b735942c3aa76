//! Groups given by multiplication oracles, and breadth-first search in their
//! Cayley graphs.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A finitely generated group: elements are opaque values with structural
/// equality, and the Cayley graph uses right multiplication by the
/// generators and their inverses.
pub trait GroupOracle {
    type Elem: Clone + Eq + Hash + Ord + Debug;

    fn identity(&self) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;
    fn generator_names(&self) -> Vec<String>;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;

    /// Word length when it is known in closed form.
    fn exact_length(&self, _e: &Self::Elem) -> Option<usize> {
        None
    }

    /// Generators followed by those inverses that are new.
    fn symmetric_generators(&self) -> Vec<Self::Elem> {
        let mut out = self.generators();
        for g in self.generators() {
            let inv = self.invert(&g);
            if !out.contains(&inv) {
                out.push(inv);
            }
        }
        out
    }
}

/// `Z = <t>`, elements are exponents.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl GroupOracle for Integers {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn generators(&self) -> Vec<i64> {
        vec![1]
    }

    fn generator_names(&self) -> Vec<String> {
        vec!["t".into()]
    }

    fn multiply(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }

    fn invert(&self, a: &i64) -> i64 {
        -a
    }

    fn exact_length(&self, e: &i64) -> Option<usize> {
        Some(e.unsigned_abs() as usize)
    }
}

/// `B_r`, sphere by sphere.
#[derive(Debug, Clone)]
pub struct Ball<E> {
    pub layers: Vec<Vec<E>>,
    pub lengths: HashMap<E, usize>,
}

impl<E: Clone + Eq + Hash> Ball<E> {
    pub fn radius(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = (&E, usize)> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(r, layer)| layer.iter().map(move |e| (e, r)))
    }

    /// `γ(r)` for every `r` up to the radius.
    pub fn growth(&self) -> Vec<usize> {
        self.layers
            .iter()
            .scan(0, |acc, l| {
                *acc += l.len();
                Some(*acc)
            })
            .collect()
    }
}

/// Breadth-first exploration of the Cayley graph, stopping after `radius`
/// spheres or once more than `cap` elements are stored.
pub struct BallWalker<'a, O: GroupOracle> {
    oracle: &'a O,
    gens: Vec<O::Elem>,
    ball: Ball<O::Elem>,
    cap: usize,
}

impl<'a, O: GroupOracle> BallWalker<'a, O> {
    pub fn new(oracle: &'a O, cap: usize) -> Self {
        let e = oracle.identity();
        let mut lengths = HashMap::new();
        lengths.insert(e.clone(), 0);
        BallWalker {
            oracle,
            gens: oracle.symmetric_generators(),
            ball: Ball {
                layers: vec![vec![e]],
                lengths,
            },
            cap,
        }
    }

    pub fn ball(&self) -> &Ball<O::Elem> {
        &self.ball
    }

    pub fn into_ball(self) -> Ball<O::Elem> {
        self.ball
    }

    /// Adds one sphere; errors when the cap would be exceeded.
    pub fn grow(&mut self) -> Result<()> {
        let r = self.ball.layers.len();
        let mut next = Vec::new();
        for g in &self.ball.layers[r - 1] {
            for s in &self.gens {
                let h = self.oracle.multiply(g, s);
                if !self.ball.lengths.contains_key(&h) {
                    if self.ball.lengths.len() >= self.cap {
                        return Err(Error::CapExceeded(format!(
                            "ball of radius {r} has more than {} elements",
                            self.cap
                        )));
                    }
                    self.ball.lengths.insert(h.clone(), r);
                    next.push(h);
                }
            }
        }
        self.ball.layers.push(next);
        Ok(())
    }
}

pub fn ball<O: GroupOracle>(oracle: &O, radius: usize, cap: usize) -> Result<Ball<O::Elem>> {
    let mut w = BallWalker::new(oracle, cap);
    for _ in 0..radius {
        w.grow()?;
    }
    Ok(w.into_ball())
}

/// `γ(n)`.
pub fn growth<O: GroupOracle>(oracle: &O, n: usize, cap: usize) -> Result<usize> {
    Ok(ball(oracle, n, cap)?.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordLength {
    Exact(usize),
    /// Not reached within the radius or the memory cap.
    Unknown,
}

impl WordLength {
    pub fn exact(self) -> Option<usize> {
        match self {
            WordLength::Exact(n) => Some(n),
            WordLength::Unknown => None,
        }
    }
}

pub fn bfs_length<O: GroupOracle>(oracle: &O, g: &O::Elem, max_radius: usize, max_ball: usize) -> WordLength {
    let mut w = BallWalker::new(oracle, max_ball);
    loop {
        if let Some(&r) = w.ball().lengths.get(g) {
            return WordLength::Exact(r);
        }
        if w.ball().radius() >= max_radius || w.grow().is_err() {
            return WordLength::Unknown;
        }
    }
}

/// Word lengths and distances `d(x, y) = ℓ(x⁻¹y)`, from a closed form when
/// the oracle has one and otherwise from a lazily grown ball.
pub struct CayleyMetric<'a, O: GroupOracle> {
    oracle: &'a O,
    walker: BallWalker<'a, O>,
}

impl<'a, O: GroupOracle> CayleyMetric<'a, O> {
    pub fn new(oracle: &'a O, cap: usize) -> Self {
        CayleyMetric {
            oracle,
            walker: BallWalker::new(oracle, cap),
        }
    }

    pub fn length(&mut self, g: &O::Elem) -> Result<usize> {
        if let Some(l) = self.oracle.exact_length(g) {
            return Ok(l);
        }
        loop {
            if let Some(&r) = self.walker.ball().lengths.get(g) {
                return Ok(r);
            }
            self.walker.grow()?;
        }
    }

    pub fn distance(&mut self, x: &O::Elem, y: &O::Elem) -> Result<usize> {
        let step = self.oracle.multiply(&self.oracle.invert(x), y);
        self.length(&step)
    }
}

/// Parses `t t a^-2 1` style words over the oracle's generator names.
pub fn parse_word<O: GroupOracle>(oracle: &O, text: &str) -> Result<O::Elem> {
    let names = oracle.generator_names();
    let gens = oracle.generators();
    let mut acc = oracle.identity();
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<i64>().map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("bad exponent in `{tok}`"),
                })?,
            ),
            None => (tok, 1),
        };
        let i = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))?;
        let g = if exp < 0 {
            oracle.invert(&gens[i])
        } else {
            gens[i].clone()
        };
        for _ in 0..exp.unsigned_abs() {
            acc = oracle.multiply(&acc, &g);
        }
    }
    Ok(acc)
}
