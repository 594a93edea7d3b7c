#![allow(dead_code)]

use rts_tdma::{CapInstance, RequestTransmission, VehicleId};

/// Decodable set by brute force: keep removing any remaining vehicle that
/// is alone in one of its slots until nothing changes.
pub fn fixed_point_oracle(copies: &[Vec<usize>]) -> Vec<usize> {
    let mut remaining: Vec<bool> = vec![true; copies.len()];
    loop {
        let mut changed = false;
        for v in 0..copies.len() {
            if !remaining[v] {
                continue;
            }
            let alone = copies[v].iter().any(|s| {
                (0..copies.len())
                    .filter(|&u| remaining[u] && copies[u].contains(s))
                    .count()
                    == 1
            });
            if alone {
                remaining[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..copies.len()).filter(|&v| !remaining[v]).collect()
}

/// Instance with vehicle `i + 1` sending `copies[i]`.
pub fn instance(n_c: usize, copies: &[Vec<usize>]) -> CapInstance {
    CapInstance::new(
        n_c,
        copies
            .iter()
            .enumerate()
            .map(|(i, c)| RequestTransmission::new(i as u32 + 1, c.clone()))
            .collect(),
    )
    .unwrap()
}

/// Extracted vehicles as sorted zero-based indices.
pub fn extracted_indices(extracted: &[VehicleId]) -> Vec<usize> {
    let mut v: Vec<usize> = extracted.iter().map(|id| id.0 as usize - 1).collect();
    v.sort_unstable();
    v
}

/// All sorted slot sets of size 1..=max_degree inside [1, n_c].
pub fn copy_sets(n_c: usize, max_degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n_c) {
        if mask.count_ones() as usize <= max_degree {
            out.push(
                (0..n_c)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| b + 1)
                    .collect(),
            );
        }
    }
    out
}

/// The five-vehicle example: x=1, y=2, z=3, v=4, w=5.
pub fn worked_example() -> CapInstance {
    instance(
        8,
        &[
            vec![3, 5, 6],
            vec![1, 3],
            vec![1, 4],
            vec![6, 8],
            vec![6, 8],
        ],
    )
}

/// Exhaustively compares peel against the oracle on every instance with up to
/// `max_vehicles` vehicles, degree at most `max_degree` and `n_c` up to
/// `max_slots`. Returns `(instances checked, mismatches)`.
pub fn exhaustive_check(max_vehicles: usize, max_degree: usize, max_slots: usize) -> (u64, u64) {
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for n_c in 1..=max_slots {
        let sets = copy_sets(n_c, max_degree);
        for vehicles in 0..=max_vehicles {
            let mut idx = vec![0usize; vehicles];
            loop {
                let copies: Vec<Vec<usize>> = idx.iter().map(|&i| sets[i].clone()).collect();
                let cap = instance(n_c, &copies);
                let got = extracted_indices(&rts_tdma::peel(&cap).extracted);
                if got != fixed_point_oracle(&copies) {
                    mismatches += 1;
                }
                checked += 1;
                // odometer increment
                let mut pos = 0;
                while pos < vehicles {
                    idx[pos] += 1;
                    if idx[pos] < sets.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == vehicles {
                    break;
                }
            }
        }
    }
    (checked, mismatches)
}
