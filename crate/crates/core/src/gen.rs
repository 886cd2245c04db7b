//! Seeded random instance generation.
//!
//! Two families:
//!
//! * [`generate`] — Erdős–Rényi edges over a colored node set. Every
//!   color class is nonempty (the first `|C|` nodes take one color each
//!   before shuffling) and output is byte-reproducible per seed.
//! * [`generate_planted_blocks`] — a chain of colorful cycles on one
//!   shared palette, consecutive blocks joined by two junction edges, and
//!   optional random chords. End blocks satisfy the extraction rule of
//!   the kept-edges reduction, so these instances exercise preprocessing.

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::ColoredGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorDistribution {
    Uniform,
    /// Color `c` drawn with weight `1 / (c + 1)`.
    Skewed,
}

#[derive(Clone, Debug)]
pub struct GenSpec {
    pub n: usize,
    pub edge_probability: f64,
    pub colors: usize,
    pub distribution: ColorDistribution,
    pub seed: u64,
}

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("edge probability {0} is not in [0, 1]")]
    BadProbability(f64),
    #[error("need 1..=n colors, got {colors} for {n} nodes")]
    BadColorCount { colors: usize, n: usize },
    #[error("node count must be positive")]
    ZeroNodes,
}

/// Spreadsheet-style color token: A..Z, AA, AB, ...
pub fn color_token(mut idx: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (idx % 26) as u8);
        idx /= 26;
        if idx == 0 {
            break;
        }
        idx -= 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ASCII letters")
}

pub fn generate(spec: &GenSpec) -> Result<ColoredGraph, GenError> {
    if spec.n == 0 {
        return Err(GenError::ZeroNodes);
    }
    if !(0.0..=1.0).contains(&spec.edge_probability) || spec.edge_probability.is_nan() {
        return Err(GenError::BadProbability(spec.edge_probability));
    }
    if spec.colors == 0 || spec.colors > spec.n {
        return Err(GenError::BadColorCount { colors: spec.colors, n: spec.n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    // One node per color up front keeps every class nonempty; the final
    // shuffle hides the structure.
    let mut color_ids: Vec<usize> = (0..spec.colors).collect();
    match spec.distribution {
        ColorDistribution::Uniform => {
            for _ in spec.colors..spec.n {
                color_ids.push(rng.gen_range(0..spec.colors));
            }
        }
        ColorDistribution::Skewed => {
            let weights: Vec<f64> = (0..spec.colors).map(|c| 1.0 / (c + 1) as f64).collect();
            let dist = WeightedIndex::new(&weights).expect("positive weights");
            for _ in spec.colors..spec.n {
                color_ids.push(dist.sample(&mut rng));
            }
        }
    }
    color_ids.shuffle(&mut rng);

    let mut edges = Vec::new();
    for i in 0..spec.n {
        for j in i + 1..spec.n {
            if rng.gen_bool(spec.edge_probability) {
                edges.push((i, j));
            }
        }
    }

    let tokens: Vec<String> = color_ids.iter().map(|&c| color_token(c)).collect();
    let token_refs: Vec<&str> = tokens.iter().map(|s| s.as_str()).collect();
    Ok(ColoredGraph::build(&token_refs, &edges).expect("generated instance is well-formed"))
}

/// A chain of `blocks` colorful cycles of `block_size` nodes each, all on
/// the palette `A..` of size `block_size`. Consecutive blocks are joined
/// by two junction edges with distinct endpoints on each side; extra
/// chords appear inside blocks with probability `chord_probability`.
pub fn generate_planted_blocks(
    blocks: usize,
    block_size: usize,
    chord_probability: f64,
    seed: u64,
) -> ColoredGraph {
    assert!(blocks >= 1, "need at least one block");
    assert!(block_size >= 3, "a cycle needs at least three nodes");
    assert!(
        (0.0..=1.0).contains(&chord_probability),
        "chord probability must be in [0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = blocks * block_size;
    let mut tokens = Vec::with_capacity(n);
    let mut edges = Vec::new();
    for b in 0..blocks {
        let base = b * block_size;
        // Shuffle the palette within the block so junction endpoints vary
        // in color across seeds.
        let mut palette: Vec<usize> = (0..block_size).collect();
        palette.shuffle(&mut rng);
        for &c in &palette {
            tokens.push(color_token(c));
        }
        for i in 0..block_size {
            edges.push((base + i, base + (i + 1) % block_size));
        }
        for i in 0..block_size {
            for j in i + 2..block_size {
                if (i, j) != (0, block_size - 1) && rng.gen_bool(chord_probability) {
                    edges.push((base + i, base + j));
                }
            }
        }
        if b > 0 {
            let prev = (b - 1) * block_size;
            // Two junction edges with distinct endpoints on both sides.
            let mut left: Vec<usize> = (0..block_size).collect();
            let mut right: Vec<usize> = (0..block_size).collect();
            left.shuffle(&mut rng);
            right.shuffle(&mut rng);
            edges.push((prev + left[0], base + right[0]));
            edges.push((prev + left[1], base + right[1]));
        }
    }
    let token_refs: Vec<&str> = tokens.iter().map(|s| s.as_str()).collect();
    ColoredGraph::build(&token_refs, &edges).expect("planted instance is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::prep;
    use crate::solution::Problem;

    #[test]
    fn color_tokens_are_bijective_letters() {
        assert_eq!(color_token(0), "A");
        assert_eq!(color_token(25), "Z");
        assert_eq!(color_token(26), "AA");
        assert_eq!(color_token(27), "AB");
        assert_eq!(color_token(701), "ZZ");
        assert_eq!(color_token(702), "AAA");
    }

    #[test]
    fn extreme_probabilities() {
        let full = generate(&GenSpec {
            n: 6,
            edge_probability: 1.0,
            colors: 6,
            distribution: ColorDistribution::Uniform,
            seed: 7,
        })
        .unwrap();
        assert_eq!(full.m(), 15);
        assert_eq!(full.color_count(), 6);
        // All colors distinct: the whole graph is one colorful clique.
        let mcc = oracle::enumerate_optima(&full, Problem::Mcc).unwrap();
        assert_eq!(mcc.optimum, 1);

        let empty = generate(&GenSpec {
            n: 5,
            edge_probability: 0.0,
            colors: 2,
            distribution: ColorDistribution::Uniform,
            seed: 7,
        })
        .unwrap();
        assert_eq!(empty.m(), 0);
        assert_eq!(oracle::enumerate_optima(&empty, Problem::Mcc).unwrap().optimum, 5);
    }

    #[test]
    fn seeded_output_is_byte_stable() {
        let spec = GenSpec {
            n: 12,
            edge_probability: 0.5,
            colors: 4,
            distribution: ColorDistribution::Skewed,
            seed: 99,
        };
        let a = generate(&spec).unwrap().to_text();
        let b = generate(&spec).unwrap().to_text();
        assert_eq!(a, b);
        let other = generate(&GenSpec { seed: 100, ..spec.clone() }).unwrap().to_text();
        assert_ne!(a, other);
    }

    #[test]
    fn every_color_class_is_nonempty() {
        for seed in 0..20 {
            for dist in [ColorDistribution::Uniform, ColorDistribution::Skewed] {
                let g = generate(&GenSpec {
                    n: 9,
                    edge_probability: 0.3,
                    colors: 5,
                    distribution: dist,
                    seed,
                })
                .unwrap();
                assert_eq!(g.color_count(), 5, "seed {seed}");
                assert!(g.color_classes().iter().all(|c| !c.is_empty()));
            }
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let base = GenSpec {
            n: 5,
            edge_probability: 0.5,
            colors: 2,
            distribution: ColorDistribution::Uniform,
            seed: 0,
        };
        assert!(matches!(
            generate(&GenSpec { edge_probability: 1.5, ..base.clone() }),
            Err(GenError::BadProbability(_))
        ));
        assert!(matches!(
            generate(&GenSpec { colors: 6, ..base.clone() }),
            Err(GenError::BadColorCount { .. })
        ));
        assert!(matches!(
            generate(&GenSpec { n: 0, colors: 0, ..base }),
            Err(GenError::ZeroNodes)
        ));
    }

    #[test]
    fn planted_blocks_reduce_and_preserve_the_optimum() {
        for seed in 0..5 {
            let g = generate_planted_blocks(2, 4, 0.3, seed);
            assert_eq!(g.n(), 8);
            assert!(g.is_connected());
            let reduction = prep::preprocess_mop(&g);
            assert!(!reduction.rounds.is_empty(), "seed {seed}");
            let full = oracle::enumerate_optima(&g, Problem::Mop).unwrap();
            let reduced = oracle::enumerate_optima(&reduction.reduced, Problem::Mop).unwrap();
            assert_eq!(full.optimum, reduced.optimum + reduction.objective_offset);
        }
    }

    #[test]
    fn planted_chain_peels_from_the_ends() {
        let g = generate_planted_blocks(3, 4, 0.0, 5);
        assert_eq!((g.n(), g.m()), (12, 16));
        let reduction = prep::preprocess_mop(&g);
        assert_eq!(reduction.rounds.len(), 2);
        assert_eq!(reduction.reduced.n(), 4);
    }
}
