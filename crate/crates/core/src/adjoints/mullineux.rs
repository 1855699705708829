use std::time::Instant;

use rayon::prelude::*;

use super::{Report, Status};
use crate::combin::{mullineux, p_regular_partitions, Partition};
use crate::error::Result;
use crate::symgrp::sign_twist_identify;

fn timed(id: String, anchor: &str, seed: u64, f: impl FnOnce() -> Result<(bool, String)>) -> Report {
    let start = Instant::now();
    let mut r = match f() {
        Ok((ok, detail)) => {
            let status = if ok { Status::Verified } else { Status::Refuted };
            Report::new(id, anchor, status, [0, 0], seed).with_detail(detail)
        }
        Err(e) => Report::new(id, anchor, Status::Inconclusive, [0, 0], seed).with_detail(e.to_string()),
    };
    r.ms = start.elapsed().as_millis() as u64;
    r
}

fn partition(parts: Vec<usize>) -> Partition {
    Partition::new(parts).expect("valid partition")
}

/// The combinatorial Mullineux map against the sign twist of simple
/// `kS_d`-modules (`d ≤ oracle_d`), the involution property (`d ≤ max_d`),
/// and the values `m((2,1^{p−2})) = (p)` and `m((p−1,1)) = (3,1^{p−3})`.
pub fn verify_mullineux(p: u32, oracle_d: usize, max_d: usize, seed: u64) -> Vec<Report> {
    let pu = p as usize;
    let mut jobs: Vec<(String, Partition, bool)> = Vec::new();
    for d in 1..=max_d.max(oracle_d) {
        for l in p_regular_partitions(d, pu) {
            if d <= oracle_d {
                jobs.push((format!("mullineux/oracle/p{p}/{l}"), l.clone(), true));
            }
            if d <= max_d {
                jobs.push((format!("mullineux/involution/p{p}/{l}"), l, false));
            }
        }
    }
    let mut out: Vec<Report> = jobs
        .into_par_iter()
        .map(|(id, l, oracle)| {
            if oracle {
                timed(id, "m(λ) agrees with the sign twist D^λ ⊗ sgn", seed, || {
                    let m = mullineux(&l, pu)?;
                    let twist = sign_twist_identify(&l, p)?;
                    Ok((m == twist, format!("m = {m}, twist = {twist}")))
                })
            } else {
                timed(id, "m(m(λ)) = λ", seed, || {
                    let m = mullineux(&l, pu)?;
                    let back = mullineux(&m, pu)?;
                    Ok((back == l, format!("m = {m}, m(m) = {back}")))
                })
            }
        })
        .collect();
    if p > 2 {
        let mut hook1 = vec![2];
        hook1.extend(std::iter::repeat_n(1, pu - 2));
        let mut three = vec![3];
        three.extend(std::iter::repeat_n(1, pu - 3));
        for (name, from, to) in [
            ("hook", partition(hook1), Partition::row(pu)),
            ("two-part", partition(vec![pu - 1, 1]), partition(three)),
        ] {
            out.push(timed(format!("mullineux/value/p{p}/{name}"), "m((2,1^{p−2})) = (p), m((p−1,1)) = (3,1^{p−3})", seed, || {
                let m = mullineux(&from, pu)?;
                Ok((m == to, format!("m{from} = {m}, expected {to}")))
            }));
        }
    }
    out
}
