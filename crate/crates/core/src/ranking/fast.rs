//! Level-by-level enumeration of the rankings of the cube `I^n`.
//!
//! A ranking of `I^n` restricts to rankings `A` and `B` of the two faces
//! `x_n = 0` and `x_n = 1`. Conversely a pair `(A, B)` glues to a ranking
//! exactly when `B`, shifted so that `h_B(0) = h_A(0) +- 1`, differs from
//! `A` by one at every vertex. Such a difference function changes by
//! 0 or 2 along face edges, so it suffices to check it at the sinks of
//! either face: away from them one can always walk upwards in both faces
//! without the difference leaving {-1, +1}.

use rayon::prelude::*;

use super::Ranking;
use crate::error::{Error, Result};

/// Largest `n` enumerated without an explicit override.
pub const MAX_FAST_N: usize = 5;

/// Hard ceiling even with the override.
const MAX_FORCED_N: usize = 6;

#[derive(Clone, Debug, Default)]
pub struct FastOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Permit `n = 6`, whose run time and memory are large.
    pub allow_large: bool,
    /// Keep the rankings of the final level.
    pub keep: bool,
}

#[derive(Clone, Debug)]
pub struct FastEnumeration {
    pub n: usize,
    /// `counts[m]` is the number of rankings of `I^m`.
    pub counts: Vec<u64>,
    /// Rankings of `I^n` when requested, vertices in numeric label order.
    pub rankings: Option<Vec<Ranking>>,
}

struct Entry {
    h: Vec<u8>,
    sinks: Vec<u32>,
}

fn sinks_of(h: &[u8], m: usize) -> Vec<u32> {
    (0..h.len())
        .filter(|&x| (0..m).all(|c| h[x ^ (1 << c)] < h[x]))
        .map(|x| x as u32)
        .collect()
}

/// Shift applied to `b` for the gluing with `a`, if the pair glues.
fn glue_shift(a: &Entry, b: &Entry, sign: i32) -> Option<i32> {
    let shift = a.h[0] as i32 - b.h[0] as i32 + sign;
    let ok = a
        .sinks
        .iter()
        .chain(&b.sinks)
        .all(|&s| (a.h[s as usize] as i32 - b.h[s as usize] as i32 - shift).abs() == 1);
    ok.then_some(shift)
}

fn glued(a: &Entry, b: &Entry, shift: i32) -> Vec<u8> {
    let lifted = b.h.iter().map(|&x| x as i32 + shift);
    let all: Vec<i32> = a.h.iter().map(|&x| x as i32).chain(lifted).collect();
    let min = all.iter().copied().min().unwrap_or(0);
    all.into_iter().map(|x| (x - min) as u8).collect()
}

fn next_level(level: &[Entry], m: usize) -> Vec<Entry> {
    level
        .par_iter()
        .flat_map_iter(|a| {
            level.iter().flat_map(move |b| {
                [-1, 1].into_iter().filter_map(move |sign| {
                    glue_shift(a, b, sign).map(|shift| {
                        let h = glued(a, b, shift);
                        let sinks = sinks_of(&h, m + 1);
                        Entry { h, sinks }
                    })
                })
            })
        })
        .collect()
}

fn count_level(level: &[Entry]) -> u64 {
    level
        .par_iter()
        .map(|a| {
            level
                .iter()
                .map(|b| {
                    [-1, 1]
                        .into_iter()
                        .filter(|&s| glue_shift(a, b, s).is_some())
                        .count() as u64
                })
                .sum::<u64>()
        })
        .sum()
}

fn run(n: usize, keep: bool) -> FastEnumeration {
    let mut level = vec![Entry {
        h: vec![0],
        sinks: vec![0],
    }];
    let mut counts = vec![1u64];
    for m in 0..n {
        if m + 1 == n && !keep {
            counts.push(count_level(&level));
            return FastEnumeration {
                n,
                counts,
                rankings: None,
            };
        }
        level = next_level(&level, m);
        counts.push(level.len() as u64);
    }
    let rankings = keep.then(|| {
        level
            .into_iter()
            .map(|e| Ranking::from_heights(e.h.into_iter().map(u32::from).collect()))
            .collect()
    });
    FastEnumeration {
        n,
        counts,
        rankings,
    }
}

/// Enumerates the rankings of `I^n`, level by level from `I^0`.
pub fn enumerate_rankings_fast(n: usize, opts: &FastOptions) -> Result<FastEnumeration> {
    let limit = if opts.allow_large {
        MAX_FORCED_N
    } else {
        MAX_FAST_N
    };
    if n > limit {
        return Err(Error::Capacity {
            what: "cube rank enumeration (n)",
            requested: n as u64,
            limit: limit as u64,
        });
    }
    match opts.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
            Ok(pool.install(|| run(n, opts.keep)))
        }
        None => Ok(run(n, opts.keep)),
    }
}
