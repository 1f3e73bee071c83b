use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::GeneratorError;
use crate::graph::Graph;

/// Pairings tried before giving up. A uniform pairing is simple with
/// probability about `e^-2`, so this is never reached in practice.
pub const MAX_PAIRING_ATTEMPTS: usize = 10_000;

fn check_order(n: usize) -> Result<(), GeneratorError> {
    if n % 2 == 1 || n < 4 {
        return Err(GeneratorError::InvalidOrder(n));
    }
    Ok(())
}

fn pairing(n: usize, rng: &mut ChaCha8Rng) -> Result<Graph, GeneratorError> {
    let mut stubs: Vec<usize> = (0..3 * n).map(|s| s / 3).collect();
    for _ in 0..MAX_PAIRING_ATTEMPTS {
        stubs.shuffle(rng);
        let mut edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
        if edges.iter().any(|(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return Ok(Graph::from_edges(n, &edges).expect("checked simple"));
    }
    Err(GeneratorError::RejectionBudget(MAX_PAIRING_ATTEMPTS))
}

/// Cubic graph from the pairing model with loops and parallel edges
/// rejected. Fully determined by `(n, seed)`.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph, GeneratorError> {
    check_order(n)?;
    pairing(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Like [`random_cubic`], redrawing from the same stream until connected.
pub fn random_connected_cubic(n: usize, seed: u64) -> Result<Graph, GeneratorError> {
    check_order(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_PAIRING_ATTEMPTS {
        let g = pairing(n, &mut rng)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GeneratorError::RejectionBudget(MAX_PAIRING_ATTEMPTS))
}
