//! Restricted wreath products `Z wr H`, their word lengths, and the finite
//! inequalities behind the compression upper bounds.
//!
//! Elements are pairs `(b, φ)` with `(b₁, φ₁)(b₂, φ₂) = (b₁b₂, φ₁^{b₂} φ₂)`
//! and `φ^β(h) = φ(hβ)`. The generating set is the generators of `H` together
//! with the lamp `a = (1, δ₁)`. Under this product a word leaves its lamps
//! along a walk from `1` to `b⁻¹`, so the exact length is the lamp mass plus
//! the shortest such walk through the support.

mod cayley;
mod cube;

use std::collections::BTreeMap;

pub use cayley::{
    ball, bfs_length, growth, parse_word, Ball, BallWalker, CayleyMetric, GroupOracle, Integers, WordLength,
};
pub use cube::{
    compression_fit, skew_cube_check_exact, skew_cube_check_points, FitReport, SkewCubeReport, MAX_CUBE_DIM,
};

use crate::error::{Error, Result};

/// Largest support handled by the subset dynamic program.
pub const DEFAULT_DP_CAP: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement<E> {
    pub b: E,
    /// Exponents of the lamp generator; zero values are never stored.
    pub phi: BTreeMap<E, i64>,
}

impl<E: Ord> WreathElement<E> {
    pub fn lamp_mass(&self) -> u64 {
        self.phi.values().map(|v| v.unsigned_abs()).sum()
    }
}

/// `Z wr H`.
#[derive(Debug, Clone, Default)]
pub struct Wreath<H> {
    pub h: H,
}

impl<H: GroupOracle> Wreath<H> {
    pub fn new(h: H) -> Self {
        Wreath { h }
    }

    pub fn element(&self, b: H::Elem, phi: impl IntoIterator<Item = (H::Elem, i64)>) -> WreathElement<H::Elem> {
        let mut map = BTreeMap::new();
        for (k, v) in phi {
            *map.entry(k).or_insert(0) += v;
        }
        map.retain(|_, v| *v != 0);
        WreathElement { b, phi: map }
    }

    pub fn lamp(&self) -> WreathElement<H::Elem> {
        self.element(self.h.identity(), [(self.h.identity(), 1)])
    }

    pub fn base(&self, b: H::Elem) -> WreathElement<H::Elem> {
        self.element(b, [])
    }

    /// `(1, {h ↦ m})`.
    pub fn lamp_at(&self, h: H::Elem, m: i64) -> WreathElement<H::Elem> {
        self.element(self.h.identity(), [(h, m)])
    }

    pub fn pow(&self, e: &WreathElement<H::Elem>, n: i64) -> WreathElement<H::Elem> {
        let step = if n < 0 { self.invert(e) } else { e.clone() };
        let mut acc = self.identity();
        for _ in 0..n.unsigned_abs() {
            acc = self.multiply(&acc, &step);
        }
        acc
    }
}

impl<H: GroupOracle> GroupOracle for Wreath<H> {
    type Elem = WreathElement<H::Elem>;

    fn identity(&self) -> Self::Elem {
        self.base(self.h.identity())
    }

    fn generators(&self) -> Vec<Self::Elem> {
        let mut g: Vec<_> = self.h.generators().into_iter().map(|b| self.base(b)).collect();
        g.push(self.lamp());
        g
    }

    fn generator_names(&self) -> Vec<String> {
        let mut n = self.h.generator_names();
        n.push("a".into());
        n
    }

    fn multiply(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let shift = self.h.invert(&y.b);
        let moved = x.phi.iter().map(|(s, v)| (self.h.multiply(s, &shift), *v));
        let phi = y.phi.iter().map(|(s, v)| (s.clone(), *v)).chain(moved);
        self.element(self.h.multiply(&x.b, &y.b), phi)
    }

    fn invert(&self, x: &Self::Elem) -> Self::Elem {
        let phi = x.phi.iter().map(|(s, v)| (self.h.multiply(s, &x.b), -v));
        self.element(self.h.invert(&x.b), phi)
    }
}

/// Shortest walk from `start` to `end` through every point, by a subset
/// dynamic program over pairwise Cayley distances.
pub fn shortest_visiting_walk<O: GroupOracle>(
    metric: &mut CayleyMetric<'_, O>,
    start: &O::Elem,
    end: &O::Elem,
    points: &[O::Elem],
    cap: usize,
) -> Result<usize> {
    let k = points.len();
    if k > cap {
        return Err(Error::CapExceeded(format!(
            "support of size {k} exceeds the dynamic-program cap {cap}"
        )));
    }
    if k == 0 {
        return metric.distance(start, end);
    }
    let from_start = points
        .iter()
        .map(|p| metric.distance(start, p))
        .collect::<Result<Vec<_>>>()?;
    let to_end = points
        .iter()
        .map(|p| metric.distance(p, end))
        .collect::<Result<Vec<_>>>()?;
    let mut between = vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                between[i * k + j] = metric.distance(&points[i], &points[j])?;
            }
        }
    }
    const INF: usize = usize::MAX / 2;
    let full = (1usize << k) - 1;
    let mut dp = vec![INF; (1 << k) * k];
    for i in 0..k {
        dp[(1 << i) * k + i] = from_start[i];
    }
    for mask in 1..=full {
        for i in 0..k {
            let cur = dp[mask * k + i];
            if cur >= INF || mask >> i & 1 == 0 {
                continue;
            }
            for j in 0..k {
                if mask >> j & 1 == 0 {
                    let next = mask | 1 << j;
                    let cand = cur + between[i * k + j];
                    if cand < dp[next * k + j] {
                        dp[next * k + j] = cand;
                    }
                }
            }
        }
    }
    Ok((0..k).map(|i| dp[full * k + i] + to_end[i]).min().expect("k > 0"))
}

/// Exact word length of `(b, φ)`: lamp mass plus the shortest walk from `1`
/// to `b⁻¹` through `supp(φ)`.
pub fn parr_length<H: GroupOracle>(
    wreath: &Wreath<H>,
    e: &WreathElement<H::Elem>,
    metric: &mut CayleyMetric<'_, H>,
    dp_cap: usize,
) -> Result<usize> {
    let points: Vec<_> = e.phi.keys().cloned().collect();
    let end = wreath.h.invert(&e.b);
    let walk = shortest_visiting_walk(metric, &wreath.h.identity(), &end, &points, dp_cap)?;
    Ok(e.lamp_mass() as usize + walk)
}

/// Closed form of the visiting walk in `Z` from `0` to `end` through `points`.
pub fn z_walk(points: impl IntoIterator<Item = i64>, end: i64) -> u64 {
    let mut lo = end.min(0);
    let mut hi = end.max(0);
    for p in points {
        lo = lo.min(p);
        hi = hi.max(p);
    }
    let left_first = (0 - lo) + (hi - lo) + (hi - end);
    let right_first = hi + (hi - lo) + (end - lo);
    left_first.min(right_first) as u64
}

/// [`parr_length`] for `H = Z` in closed form.
pub fn parr_length_z(e: &WreathElement<i64>) -> u64 {
    e.lamp_mass() + z_walk(e.phi.keys().copied(), -e.b)
}

#[derive(Debug, Clone)]
pub struct XnMember<E> {
    pub b: E,
    pub len_b: usize,
    /// `w_b = b⁻¹ x^{2n+1−ℓ(b)} b`.
    pub w: WreathElement<E>,
}

/// One `w_b` for each `b` in the ball `B_n` of `H`.
pub fn xn_family<H: GroupOracle>(wreath: &Wreath<H>, n: usize, cap: usize) -> Result<Vec<XnMember<H::Elem>>> {
    let ball = ball(&wreath.h, n, cap)?;
    let mut out = Vec::with_capacity(ball.len());
    for (b, len_b) in ball.elements() {
        let lamp = wreath.pow(&wreath.lamp(), (2 * n + 1 - len_b) as i64);
        let b_inv = wreath.base(wreath.h.invert(b));
        let w = wreath.multiply(&wreath.multiply(&b_inv, &lamp), &wreath.base(b.clone()));
        out.push(XnMember { b: b.clone(), len_b, w });
    }
    Ok(out)
}

/// `Π w_b^{ε_b}` in family order.
pub fn signed_support_product<H: GroupOracle>(
    wreath: &Wreath<H>,
    family: &[XnMember<H::Elem>],
    signs: &[i8],
) -> Result<WreathElement<H::Elem>> {
    if family.len() != signs.len() {
        return Err(Error::LengthMismatch {
            expected: family.len(),
            got: signs.len(),
        });
    }
    let mut acc = wreath.identity();
    for (m, &s) in family.iter().zip(signs) {
        let w = if s < 0 { wreath.invert(&m.w) } else { m.w.clone() };
        acc = wreath.multiply(&acc, &w);
    }
    Ok(acc)
}

/// Parses `b=<h-word>; phi=<h-word>:<int>,<h-word>:<int>`. Either part may be
/// omitted; repeated positions add up.
pub fn parse_element<H: GroupOracle>(wreath: &Wreath<H>, text: &str) -> Result<WreathElement<H::Elem>> {
    let bad = |m: String| Error::Parse { line: 1, message: m };
    let mut b = wreath.h.identity();
    let mut phi = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| bad(format!("expected `key=value`, found `{part}`")))?;
        match key.trim() {
            "b" => b = parse_word(&wreath.h, value)?,
            "phi" => {
                for entry in value.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                    let (pos, exp) = entry
                        .rsplit_once(':')
                        .ok_or_else(|| bad(format!("expected `<word>:<int>`, found `{entry}`")))?;
                    let exp: i64 = exp
                        .trim()
                        .parse()
                        .map_err(|_| bad(format!("bad exponent in `{entry}`")))?;
                    phi.push((parse_word(&wreath.h, pos)?, exp));
                }
            }
            other => return Err(bad(format!("unknown key `{other}`"))),
        }
    }
    Ok(wreath.element(b, phi))
}

fn z_word(k: i64) -> String {
    match k {
        0 => "1".into(),
        1 => "t".into(),
        k => format!("t^{k}"),
    }
}

/// Inverse of [`parse_element`] for `H = Z`.
pub fn render_z_element(e: &WreathElement<i64>) -> String {
    let phi: Vec<String> = e.phi.iter().map(|(k, v)| format!("{}:{v}", z_word(*k))).collect();
    format!("b={}; phi={}", z_word(e.b), phi.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zz() -> Wreath<Integers> {
        Wreath::new(Integers)
    }

    fn random_elem(w: &Wreath<Integers>, rng: &mut ChaCha8Rng) -> WreathElement<i64> {
        let supp = rng.gen_range(0..4);
        w.element(
            rng.gen_range(-4..=4),
            (0..supp).map(|_| (rng.gen_range(-4..=4), rng.gen_range(-3..=3))),
        )
    }

    #[test]
    fn multiplication_examples() {
        let w = zz();
        let t = w.base(1);
        let a = w.lamp();
        assert_eq!(w.multiply(&t, &w.base(-1)), w.identity());
        assert_eq!(w.multiply(&a, &t), w.element(1, [(-1, 1)]));
        assert_eq!(w.element(0, [(3, 0)]).phi.len(), 0);
    }

    #[test]
    fn group_axioms() {
        let w = zz();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let (x, y, z) = (
                random_elem(&w, &mut rng),
                random_elem(&w, &mut rng),
                random_elem(&w, &mut rng),
            );
            assert_eq!(w.multiply(&w.multiply(&x, &y), &z), w.multiply(&x, &w.multiply(&y, &z)));
            assert_eq!(w.multiply(&x, &w.invert(&x)), w.identity());
            assert_eq!(w.multiply(&w.invert(&x), &x), w.identity());
        }
    }

    #[test]
    fn parr_examples() {
        let w = zz();
        assert_eq!(parr_length_z(&w.lamp()), 1);
        let e = w.element(0, [(-1, 1), (2, 3)]);
        assert_eq!(parr_length_z(&e), 10);
        let mut m = CayleyMetric::new(&Integers, 1000);
        assert_eq!(parr_length(&w, &e, &mut m, DEFAULT_DP_CAP).unwrap(), 10);
        assert_eq!(bfs_length(&w, &e, 10, 1_000_000), WordLength::Exact(10));
        let big = w.element(0, (0..20).map(|i| (i, 1)));
        assert!(matches!(
            parr_length(&w, &big, &mut m, DEFAULT_DP_CAP),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn oracles_agree_on_small_ball() {
        let w = zz();
        let b = ball(&w, 5, 1_000_000).unwrap();
        let mut m = CayleyMetric::new(&Integers, 1000);
        for (e, r) in b.elements() {
            assert_eq!(parr_length_z(e), r as u64, "{e:?}");
            assert_eq!(parr_length(&w, e, &mut m, DEFAULT_DP_CAP).unwrap(), r);
        }
    }

    #[test]
    fn dp_over_a_wreath_base() {
        // Z wr (Z wr Z): distances in the base come from breadth-first search.
        let inner = zz();
        let outer = Wreath::new(inner.clone());
        let e = parse_element(&outer, "b=t; phi=a:1,t^-1:2").unwrap();
        let mut m = CayleyMetric::new(&inner, 100_000);
        let len = parr_length(&outer, &e, &mut m, DEFAULT_DP_CAP).unwrap();
        assert_eq!(bfs_length(&outer, &e, len, 5_000_000), WordLength::Exact(len));
    }

    #[test]
    fn xn_family_lengths() {
        let w = zz();
        let fam = xn_family(&w, 2, 1000).unwrap();
        let mut lens: Vec<u64> = fam.iter().map(|m| parr_length_z(&m.w)).collect();
        lens.sort();
        assert_eq!(lens, vec![5, 6, 6, 7, 7]);
        for m in &fam {
            assert_eq!(m.w.b, 0);
            assert_eq!(m.w.phi.keys().copied().collect::<Vec<_>>(), vec![-m.b]);
            for o in &fam {
                assert_eq!(w.multiply(&m.w, &o.w), w.multiply(&o.w, &m.w));
            }
        }
    }

    #[test]
    fn signed_products() {
        let w = zz();
        let fam = xn_family(&w, 1, 100).unwrap();
        for bits in 0..8u32 {
            let signs: Vec<i8> = (0..3).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
            let p = signed_support_product(&w, &fam, &signs).unwrap();
            assert_eq!(parr_length_z(&p), 11);
        }
        assert!(signed_support_product(&w, &fam, &[1]).is_err());
    }

    #[test]
    fn element_specs() {
        let w = zz();
        let e = parse_element(&w, "b=t^-2; phi=t^-1:1, t t:3, 1:-2").unwrap();
        assert_eq!(e, w.element(-2, [(-1, 1), (2, 3), (0, -2)]));
        assert_eq!(parse_element(&w, &render_z_element(&e)).unwrap(), e);
        assert_eq!(parse_element(&w, "").unwrap(), w.identity());
        assert!(parse_element(&w, "c=t").is_err());
        assert!(parse_element(&w, "phi=t").is_err());
    }
}
