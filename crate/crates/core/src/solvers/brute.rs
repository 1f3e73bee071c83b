//! Subset-enumeration oracles. They share nothing with the branch and bound
//! beyond the graph type: subsets are visited by size, then in increasing
//! bitmask order, and checked straight from the neighbor lists.

use super::{CertKind, DominationCertificate, SolveError};
use crate::graph::Graph;

pub const BRUTE_FORCE_MAX_VERTICES: usize = 24;

pub fn brute_force_gamma(g: &Graph) -> Result<DominationCertificate, SolveError> {
    brute(g, false)
}

pub fn brute_force_i(g: &Graph) -> Result<DominationCertificate, SolveError> {
    brute(g, true)
}

fn brute(g: &Graph, independent: bool) -> Result<DominationCertificate, SolveError> {
    let n = g.n();
    if n == 0 {
        return Err(SolveError::EmptyGraph);
    }
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(SolveError::TooLarge {
            n,
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    for k in 1..=n {
        let mut mask: u32 = (1u32 << k) - 1;
        let end: u32 = 1u32 << n;
        while mask < end {
            if accepts(g, mask, independent) {
                let set = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                let kind = if independent {
                    CertKind::IndependentDominating
                } else {
                    CertKind::Dominating
                };
                return DominationCertificate::new(g, set, kind);
            }
            // Gosper's hack: next mask with the same popcount
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    unreachable!("the full vertex set dominates")
}

fn accepts(g: &Graph, mask: u32, independent: bool) -> bool {
    let inside = |v: usize| mask >> v & 1 == 1;
    for v in 0..g.n() {
        let nbrs = g.neighbors(v);
        if inside(v) {
            if independent && nbrs.iter().any(|&w| inside(w)) {
                return false;
            }
        } else if !nbrs.iter().any(|&w| inside(w)) {
            return false;
        }
    }
    true
}
