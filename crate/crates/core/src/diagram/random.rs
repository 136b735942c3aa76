//! Seedable random diagrams for property tests and experiments.
//!
//! Procedure: start from `top`; at each of `steps` steps list every
//! applicable factor `(offset, relation, dir)` on the current bottom word in
//! lexicographic order and pick one uniformly. With probability
//! `cancel_bias` the step instead picks, uniformly, one of the cells whose
//! whole bottom path lies on the current bottom word and applies its
//! inverse, which plants a dipole. The same RNG state always produces the
//! same diagram.

use std::sync::Arc;

use rand::Rng;

use crate::presentation::{Dir, Presentation, Word};

use super::{AtomicFactor, Diagram};

/// Every factor that applies to `w`, in `(offset, relation, dir)` order.
pub fn applicable_factors(p: &Presentation, w: &Word) -> Vec<AtomicFactor> {
    let mut out = Vec::new();
    for offset in 0..w.len() {
        for (r, rel) in p.relations().iter().enumerate() {
            for dir in [Dir::Forward, Dir::Backward] {
                if w.occurs_at(rel.source(dir), offset) {
                    out.push(AtomicFactor::new(offset, r, dir));
                }
            }
        }
    }
    out
}

/// Uniform random walk of `steps` factors from `top`.
pub fn random_diagram<R: Rng + ?Sized>(p: &Arc<Presentation>, top: &Word, steps: usize, rng: &mut R) -> Diagram {
    random_diagram_with_cancellation(p, top, steps, 0.0, rng)
}

pub fn random_diagram_with_cancellation<R: Rng + ?Sized>(
    p: &Arc<Presentation>,
    top: &Word,
    steps: usize,
    cancel_bias: f64,
    rng: &mut R,
) -> Diagram {
    // Track, per position of the current bottom word, which cell produced
    // the letter there, so cells lying wholly on the bottom can be undone.
    let mut word = top.clone();
    let mut producer: Vec<Option<usize>> = vec![None; top.len()];
    let mut factors: Vec<AtomicFactor> = Vec::new();
    let mut widths: Vec<usize> = Vec::new();
    let mut exposed: Vec<usize> = Vec::new();

    for _ in 0..steps {
        let mut chosen = None;
        if cancel_bias > 0.0 && rng.gen_bool(cancel_bias.min(1.0)) {
            // A cell is exposed when all of its bottom letters are still on
            // the word; they are then contiguous.
            exposed.clear();
            let mut counts = vec![0usize; factors.len()];
            for c in producer.iter().flatten() {
                counts[*c] += 1;
            }
            exposed.extend((0..factors.len()).filter(|&c| counts[c] == widths[c] && widths[c] > 0));
            if !exposed.is_empty() {
                let c = exposed[rng.gen_range(0..exposed.len())];
                let offset = producer.iter().position(|&q| q == Some(c)).unwrap();
                chosen = Some(AtomicFactor::new(offset, factors[c].relation, factors[c].dir.flip()));
            }
        }
        let f = match chosen {
            Some(f) => f,
            None => {
                let options = applicable_factors(p, &word);
                if options.is_empty() {
                    break;
                }
                options[rng.gen_range(0..options.len())]
            }
        };
        let rel = &p.relations()[f.relation];
        let (src, dst) = (rel.source(f.dir), rel.target(f.dir));
        let id = factors.len();
        word = word.splice(f.offset, src.len(), dst);
        producer.splice(f.offset..f.offset + src.len(), std::iter::repeat_n(Some(id), dst.len()));
        factors.push(f);
        widths.push(dst.len());
    }
    Diagram::from_factors(p.clone(), top.clone(), &factors).expect("random walk builds a valid chain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::presets;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn same_seed_same_diagram() {
        let p = presets::w();
        let top = p.base().unwrap().clone();
        let a = random_diagram_with_cancellation(&p, &top, 25, 0.3, &mut ChaCha8Rng::seed_from_u64(5));
        let b = random_diagram_with_cancellation(&p, &top, 25, 0.3, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
        assert_eq!(a.cell_count(), 25);
    }

    #[test]
    fn cancellation_plants_dipoles() {
        let p = presets::f();
        let top = p.base().unwrap().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let with_dipoles = (0..50)
            .map(|_| random_diagram_with_cancellation(&p, &top, 12, 0.5, &mut rng))
            .filter(|d| !d.is_reduced())
            .count();
        assert!(with_dipoles > 25, "{with_dipoles}");
    }
}
