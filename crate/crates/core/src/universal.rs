//! The universal diagram group `U = D(<x, a | x³ = x², ax = a>, a)`.
//!
//! Every `(a, a)`-diagram splits as `Δ₁ ∘ (ε(a) + Δ′) ∘ Δ₂` where `Δ₁` is a
//! chain of `a → ax` cells, `Δ₂` a chain of `ax → a` cells and `Δ′` an
//! `(x^k, x^m)`-diagram over `<x | x³ = x²>`. Reading the rightmost
//! decomposition of `Δ′` gives a word in `x₀, x₁, …`; substituting
//! `x_j = x₀^{-(j-2)} x₂ x₀^{j-2}` and cancelling the `x₀` blocks gives a word
//! in `x₀, x₁, x₂` shorter than five times the cell count.

use std::sync::Arc;

use rand::Rng;

use crate::diagram::random::random_diagram;
use crate::diagram::{same_presentation, AtomicFactor, CellId, Diagram, EdgeId, PlaneComplex};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::presentation::{presets, Dir, Presentation, Word};
use crate::thompson::FWord;

/// Letters `x_j^{±1}` over U's infinite generating set.
pub type UGenWord = FWord;

const REL_X: usize = 0;
const REL_A: usize = 1;

fn u() -> Arc<Presentation> {
    presets::u()
}

fn x_power(n: usize) -> Word {
    Word::power(presets::u_core().letter("x").expect("preset letter"), n)
}

fn a_word() -> Word {
    u().word("a").expect("preset letter")
}

/// `Δ = Δ₁ ∘ (ε(a) + Δ′) ∘ Δ₂`. `delta_prime` is `None` exactly when
/// `k = m = 0`.
#[derive(Debug, Clone)]
pub struct UDecomposition {
    pub k: usize,
    pub m: usize,
    pub delta1: Diagram,
    pub delta_prime: Option<Diagram>,
    pub delta2: Diagram,
}

impl UDecomposition {
    pub fn cell_count(&self) -> usize {
        self.k + self.m + self.delta_prime.as_ref().map_or(0, Diagram::cell_count)
    }

    pub fn reassemble(&self) -> Result<Diagram> {
        let mid = match &self.delta_prime {
            Some(xi) => widen(xi)?,
            None => Diagram::trivial(u(), a_word())?,
        };
        self.delta1.concat(&mid)?.concat(&self.delta2)
    }
}

/// `ε(a) + Ξ` over the U presentation.
fn widen(xi: &Diagram) -> Result<Diagram> {
    // Letter `x` has id 0 in both presentations.
    let top = a_word().concat(xi.top());
    let factors: Vec<_> = xi.factors().iter().map(|f| f.shifted(1)).collect();
    Diagram::from_factors(u(), top, &factors)
}

/// Adds `a → ax` cells on top of `ε(a) + Ξ` and `ax → a` cells below.
pub fn u_lift(xi: &Diagram) -> Result<Diagram> {
    if !same_presentation(xi.presentation(), &presets::u_core()) {
        return Err(Error::PresentationMismatch);
    }
    let (k, m) = (xi.top().len(), xi.bottom().len());
    let mut factors = vec![AtomicFactor::new(0, REL_A, Dir::Backward); k];
    factors.extend(xi.factors().iter().map(|f| f.shifted(1)));
    factors.extend(std::iter::repeat_n(AtomicFactor::new(0, REL_A, Dir::Forward), m));
    Diagram::from_factors(u(), a_word(), &factors)
}

fn is_a_cell(cx: &PlaneComplex, c: CellId, dir: Dir) -> bool {
    cx.cells[c].relation == REL_A && cx.cells[c].dir == dir
}

/// The `ax → a` cells met walking up from the bottom edge, their number,
/// and the `a`-edge where the walk stops.
fn lower_chain(cx: &PlaneComplex) -> (Vec<bool>, usize, EdgeId) {
    let mut lower = vec![false; cx.cells.len()];
    let mut f = cx.bottom[0];
    let mut m = 0;
    while let Some(c) = cx.edges[f].producer.filter(|&c| is_a_cell(cx, c, Dir::Forward)) {
        lower[c] = true;
        f = cx.cells[c].top[0];
        m += 1;
    }
    (lower, m, f)
}

pub fn u_decompose(d: &Diagram) -> Result<UDecomposition> {
    let a = a_word();
    if !same_presentation(d.presentation(), &u()) {
        return Err(Error::PresentationMismatch);
    }
    if d.top() != &a || d.bottom() != &a {
        let p = d.presentation();
        return Err(Error::NotSpherical {
            top: p.render_word(d.top()),
            bottom: p.render_word(d.bottom()),
        });
    }
    let cx = d.complex();
    let n = cx.cells.len();
    let mut upper = vec![false; n];
    let mut e = cx.top[0];
    let mut k = 0;
    while let Some(c) = cx.edges[e].consumer.filter(|&c| is_a_cell(cx, c, Dir::Backward)) {
        upper[c] = true;
        e = cx.cells[c].bottom[0];
        k += 1;
    }
    let (lower, m, f) = lower_chain(cx);
    if e != f {
        return Err(Error::Malformed("the a-chains from top and bottom do not meet".into()));
    }
    if (0..n).any(|c| cx.cells[c].relation == REL_A && !upper[c] && !lower[c]) {
        return Err(Error::Malformed("an a-cell lies off the a-chains".into()));
    }
    let (delta1, rest) = d.split_prefix(&upper)?;
    let (lower, _, _) = lower_chain(rest.complex());
    let keep: Vec<bool> = lower.iter().map(|l| !l).collect();
    let (middle, delta2) = rest.split_prefix(&keep)?;
    let delta_prime = if k == 0 {
        if m != 0 || middle.cell_count() != 0 {
            return Err(Error::Malformed("cells below a bare a-edge".into()));
        }
        None
    } else {
        let factors: Vec<_> = middle
            .factors()
            .iter()
            .map(|f| AtomicFactor::new(f.offset - 1, f.relation, f.dir))
            .collect();
        Some(Diagram::from_factors(presets::u_core(), x_power(k), &factors)?)
    };
    Ok(UDecomposition {
        k,
        m,
        delta1,
        delta_prime,
        delta2,
    })
}

/// Factor `(a x^s, x² = x³, x^t)^ε` becomes `x_t^ε`; `a`-cells contribute
/// nothing.
pub fn extract_from(dec: &UDecomposition) -> UGenWord {
    let Some(xi) = &dec.delta_prime else {
        return FWord::default();
    };
    let p = xi.presentation().clone();
    let mut len = xi.top().len();
    let mut out = Vec::with_capacity(xi.cell_count());
    for f in xi.factors() {
        let rel = &p.relations()[f.relation];
        let (src, dst) = (rel.source(f.dir).len(), rel.target(f.dir).len());
        let t = len - f.offset - src;
        let sign = if f.dir == Dir::Backward { 1 } else { -1 };
        out.push((t as u32, sign));
        len = len - src + dst;
    }
    FWord(out)
}

pub fn u_extract_word(d: &Diagram) -> Result<UGenWord> {
    Ok(extract_from(&u_decompose(d)?))
}

/// Lazily extended list of `x₀, x₁, …` in U.
#[derive(Debug, Clone, Default)]
pub struct UGenerators {
    gens: Vec<GroupElement>,
}

impl UGenerators {
    pub fn new() -> Self {
        Self::default()
    }

    /// `x_t`: the lift of one `x² → x³` cell with right padding `x^t`.
    pub fn get(&mut self, t: usize) -> &GroupElement {
        while self.gens.len() <= t {
            let t = self.gens.len();
            let cell = AtomicFactor::new(0, REL_X, Dir::Backward);
            let xi = Diagram::atomic(presets::u_core(), x_power(t + 2), cell).expect("x² → x³ applies");
            let lifted = u_lift(&xi).expect("x-only diagram");
            self.gens.push(GroupElement::from_diagram(&lifted).expect("spherical"));
        }
        &self.gens[t]
    }
}

pub fn u_generator(t: i64) -> Result<GroupElement> {
    if t < 0 {
        return Err(Error::NegativeIndex(t));
    }
    Ok(UGenerators::new().get(t as usize).clone())
}

pub fn u_word_to_element(w: &UGenWord) -> Result<GroupElement> {
    let mut gens = UGenerators::new();
    let mut acc = GroupElement::identity(u(), a_word())?;
    for &(i, s) in &w.0 {
        let g = gens.get(i as usize);
        let g = if s < 0 { g.invert() } else { g.clone() };
        acc = acc.multiply(&g)?;
    }
    Ok(acc)
}

/// The rewritten word and the quantities bounding its length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteReport {
    /// `W̄ = W₀ v₁^{ε₁} W₁ ⋯ v_r^{ε_r} W_r` over `x₀, x₁, x₂`.
    pub word: FWord,
    /// Subscripts `j₁ … j_r` of the source word.
    pub subscripts: Vec<u32>,
    /// `|W₀|, …, |W_r|`; empty when `r = 0`.
    pub w_lengths: Vec<usize>,
    pub v_length: usize,
    pub s1: usize,
    pub s2: usize,
    pub r: usize,
    pub n: usize,
}

impl RewriteReport {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn bound(&self) -> usize {
        5 * self.n
    }
}

fn u_exponent(j: u32) -> i64 {
    j.saturating_sub(2) as i64
}

fn push_x0_power(out: &mut Vec<(u32, i8)>, e: i64) {
    let s = if e < 0 { -1 } else { 1 };
    out.extend(std::iter::repeat_n((0, s), e.unsigned_abs() as usize));
}

/// Replaces `x_j` by `u_j⁻¹ v_j u_j` (`u_j = 1, v_j = x_j` for `j ≤ 1`,
/// `u_j = x₀^{j−2}, v_j = x₂` otherwise) and freely reduces each block
/// `u_{jᵢ} u_{jᵢ₊₁}⁻¹`. `n` is the cell count of the source diagram.
pub fn u_rewrite_3gen(w: &UGenWord, n: usize) -> RewriteReport {
    let js: Vec<u32> = w.0.iter().map(|&(j, _)| j).collect();
    let r = js.len();
    let mut out = Vec::new();
    let mut w_lengths = Vec::new();
    let mut block = |out: &mut Vec<(u32, i8)>, e: i64| {
        push_x0_power(out, e);
        w_lengths.push(e.unsigned_abs() as usize);
    };
    for (i, &(j, s)) in w.0.iter().enumerate() {
        let before = if i == 0 {
            -u_exponent(j)
        } else {
            u_exponent(js[i - 1]) - u_exponent(j)
        };
        block(&mut out, before);
        out.push((j.min(2), s));
    }
    if let Some(&last) = js.last() {
        block(&mut out, u_exponent(last));
    }
    let (mut s1, mut s2) = (0, 0);
    for pair in js.windows(2) {
        if pair[0] > pair[1] {
            s1 += (pair[0] - pair[1]) as usize;
        } else {
            s2 += (pair[1] - pair[0]) as usize;
        }
    }
    RewriteReport {
        word: FWord(out),
        subscripts: js,
        w_lengths,
        v_length: r,
        s1,
        s2,
        r,
        n,
    }
}

/// Everything the rewriting of one `(a, a)`-diagram produces.
#[derive(Debug, Clone)]
pub struct URewrite {
    pub decomposition: UDecomposition,
    pub extracted: UGenWord,
    pub report: RewriteReport,
}

impl URewrite {
    /// The inequalities used to bound the length, for `r ≥ 1`.
    pub fn bounds_hold(&self) -> bool {
        let rep = &self.report;
        let (k, m, n, r) = (self.decomposition.k, self.decomposition.m, rep.n, rep.r);
        if r == 0 {
            return rep.word.is_empty();
        }
        let j1 = rep.subscripts[0] as usize;
        let jr = rep.subscripts[r - 1] as usize;
        rep.w_lengths[0] <= j1
            && rep.w_lengths[r] <= jr
            && j1 + 2 <= k
            && jr + 2 <= m
            && rep.s1 < 2 * r
            && rep.s1 + rep.s2 < 4 * n
            && rep.len() < rep.bound()
    }
}

pub fn u_rewrite_diagram(d: &Diagram) -> Result<URewrite> {
    let decomposition = u_decompose(d)?;
    let extracted = extract_from(&decomposition);
    let report = u_rewrite_3gen(&extracted, d.cell_count());
    Ok(URewrite {
        decomposition,
        extracted,
        report,
    })
}

/// Subword `x_i^ε x_j` forces `i ≤ j + 1`; `x_i^ε x_j⁻¹` forces `i ≤ j + 2`.
pub fn adjacent_letters_ok(w: &UGenWord) -> bool {
    w.0.windows(2).all(|p| {
        let (i, j, s) = (p[0].0, p[1].0, p[1].1);
        if s > 0 {
            i <= j + 1
        } else {
            i <= j + 2
        }
    })
}

/// A reduced `(a, a)`-diagram with at most `max_cells` cells: the reduced
/// lift of a random walk over `<x | x³ = x²>` from `x^k`.
pub fn random_u_diagram<R: Rng + ?Sized>(rng: &mut R, max_cells: usize) -> Diagram {
    let core = presets::u_core();
    loop {
        let k = rng.gen_range(1..=8);
        let steps = rng.gen_range(0..=max_cells.min(40));
        let xi = random_diagram(&core, &x_power(k), steps, rng);
        let d = u_lift(&xi).expect("x-only diagram").reduce();
        if d.cell_count() <= max_cells {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn word(s: &str) -> UGenWord {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_cases() {
        let e = Diagram::trivial(u(), a_word()).unwrap();
        let dec = u_decompose(&e).unwrap();
        assert_eq!((dec.k, dec.m), (0, 0));
        assert!(dec.delta_prime.is_none());
        assert!(u_extract_word(&e).unwrap().is_empty());

        let lift = u_lift(&Diagram::trivial(presets::u_core(), x_power(1)).unwrap()).unwrap();
        assert_eq!(lift.cell_count(), 2);
        assert!(lift.reduce().is_trivial());
        let dec = u_decompose(&lift).unwrap();
        assert_eq!((dec.k, dec.m), (1, 1));
        assert_eq!(
            dec.delta_prime.unwrap(),
            Diagram::trivial(presets::u_core(), x_power(1)).unwrap()
        );
    }

    #[test]
    fn single_cell_lifts_are_generators() {
        for t in 0..5 {
            let g = u_generator(t).unwrap();
            assert_eq!(g.cell_count(), 2 * t as usize + 6);
            assert_eq!(u_extract_word(g.diagram()).unwrap(), FWord(vec![(t as u32, 1)]));
        }
        assert_eq!(u_generator(-2).unwrap_err(), Error::NegativeIndex(-2));
    }

    #[test]
    fn universal_relations() {
        let mut g = UGenerators::new();
        for i in 0..5usize {
            for j in (i + 1)..=6usize {
                let lhs = g.get(j).clone().multiply(g.get(i)).unwrap();
                let rhs = g.get(i).clone().multiply(g.get(j + 1)).unwrap();
                assert_eq!(lhs == rhs, j - i > 1, "x{j} x{i} vs x{i} x{}", j + 1);
            }
        }
    }

    #[test]
    fn higher_generators_are_conjugates_of_x2() {
        let mut g = UGenerators::new();
        let x0 = g.get(0).clone();
        for n in 3..6 {
            let conj = g.get(2).clone().conjugate_by(&x0.pow(n as i64 - 2)).unwrap();
            assert_eq!(&conj, g.get(n));
        }
    }

    #[test]
    fn rewrite_examples() {
        let r = u_rewrite_3gen(&word("x0 x1"), 10);
        assert_eq!(r.word, word("x0 x1"));
        let r = u_rewrite_3gen(&word("x4"), 14);
        assert_eq!(r.word, word("x0^-2 x2 x0^2"));
        assert_eq!(r.len(), 5);
        let r = u_rewrite_3gen(&word("x3 x1^-1"), 12);
        assert_eq!(r.word, word("x0^-1 x2 x0 x1^-1"));
        assert_eq!(r.len(), 4);
        assert!(u_rewrite_3gen(&FWord::default(), 0).is_empty());
    }

    #[test]
    fn rewriting_preserves_elements() {
        for w in ["x4", "x3 x1^-1", "x0 x5^-1 x2", "x6 x6 x1^-1"] {
            let w = word(w);
            let r = u_rewrite_3gen(&w, 0);
            assert_eq!(u_word_to_element(&r.word).unwrap(), u_word_to_element(&w).unwrap());
        }
    }

    #[test]
    fn random_diagrams_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let core = presets::u_core();
        for _ in 0..100 {
            let k = rng.gen_range(1..6);
            let xi = random_diagram(&core, &x_power(k), rng.gen_range(0..12), &mut rng);
            let lifted = u_lift(&xi).unwrap();
            let dec = u_decompose(&lifted).unwrap();
            assert_eq!((dec.k, dec.m), (xi.top().len(), xi.bottom().len()));
            assert_eq!(dec.delta_prime.as_ref().unwrap(), &xi);
            assert_eq!(dec.reassemble().unwrap(), lifted);

            let d = lifted.reduce();
            let rw = u_rewrite_diagram(&d).unwrap();
            assert_eq!(rw.decomposition.reassemble().unwrap(), d);
            assert!(adjacent_letters_ok(&rw.extracted), "{}", rw.extracted);
            let g = GroupElement::from_diagram(&d).unwrap();
            assert_eq!(u_word_to_element(&rw.extracted).unwrap(), g);
            assert_eq!(u_word_to_element(&rw.report.word).unwrap(), g);
            assert!(rw.bounds_hold(), "{:?}", rw.report);
        }
    }

    #[test]
    fn rejects_other_presentations() {
        let f = presets::f();
        let d = Diagram::trivial(f.clone(), f.word("x").unwrap()).unwrap();
        assert_eq!(u_decompose(&d).unwrap_err(), Error::PresentationMismatch);
        assert_eq!(u_lift(&d).unwrap_err(), Error::PresentationMismatch);
    }
}
