use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use forest_ef::fixtures::random_connected;
use forest_ef::formulations::edmonds_system;
use forest_ef::graph::{slack_oracle, EnumerationCaps, UnionFind};
use forest_ef::lp::{max_weight_forest, simplex_max};
use forest_ef::protocols::{classical_protocol, AliceChoice};
use forest_ef::{EdgeSubset, Graph, Rational, VertexSubset};

fn graph(n: usize, seed: u64) -> Graph {
    random_connected(n, 0.4, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Keeps each edge whose bit is set unless it would close a cycle.
fn forest_from_mask(g: &Graph, mask: u64) -> EdgeSubset {
    let mut uf = UnionFind::new(g.n());
    let keep = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, &(a, b))| mask >> (i % 64) & 1 == 1 && uf.union(a, b))
        .map(|(i, _)| i);
    EdgeSubset::from_indices(g.m(), keep.collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classical_expectation_is_slack(n in 2usize..7, seed in any::<u64>(), umask in 1u64.., fmask in any::<u64>(), max in any::<bool>()) {
        let g = graph(n, seed);
        let mut members: Vec<usize> = (0..n).filter(|&v| umask >> v & 1 == 1).collect();
        if members.is_empty() {
            members.push((umask as usize) % n);
        } else if members.len() == n {
            members.remove((umask as usize) % n);
        }
        let u = VertexSubset::from_indices(n, members);
        let f = forest_from_mask(&g, fmask);
        let choice = if max { AliceChoice::Max } else { AliceChoice::Min };
        let run = classical_protocol(&g, &u, &f, choice).unwrap();
        prop_assert_eq!(run.expectation, slack_oracle(&g, &u, &f).unwrap());
    }

    #[test]
    fn edmonds_lp_matches_greedy(n in 1usize..6, seed in any::<u64>(), w in prop::collection::vec(-3i64..=3, 15)) {
        let g = graph(n, seed);
        let sys = edmonds_system(&g, false, true, EnumerationCaps::default()).unwrap();
        let weights: Vec<Rational> = (0..g.m()).map(|i| Rational::from(w[i % w.len()])).collect();
        let lp = simplex_max(&sys, &weights).value.unwrap();
        prop_assert_eq!(lp, max_weight_forest(&g, &weights));
    }
}
