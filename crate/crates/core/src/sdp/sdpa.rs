//! Writer for the SDPA sparse input format, so instances can be cross-checked
//! against external solvers.
//!
//! SDPA's native problem is `min c'x  s.t.  sum_k x_k F_k - F_0 psd`, which
//! matches the dual side of [`super::SdpInstance`]: with `x = y`, `c = -b`,
//! `F_k = -A_k`, `F_0 = -C`, the written problem's optimum is the negative of
//! our dual optimum `max b'y`. The free-variable equalities `F'y = c_f` have
//! no native SDPA representation; they are emitted as a trailing diagonal
//! block with a `+/-` pair of inequalities per equality.

use std::fmt::Write as _;

use super::SdpInstance;

/// Renders the instance in SDPA sparse format. Output is deterministic:
/// identical instances produce identical bytes.
pub fn write_sdpa_sparse(inst: &SdpInstance) -> String {
    let m = inst.constraints.len();
    let f = inst.free_dim;
    let extra = usize::from(f > 0);
    let mut out = String::new();

    let _ = writeln!(out, "{m}");
    let _ = writeln!(out, "{}", inst.block_dims.len() + extra);
    let mut dims: Vec<String> = inst.block_dims.iter().map(|d| d.to_string()).collect();
    if f > 0 {
        dims.push(format!("-{}", 2 * f));
    }
    let _ = writeln!(out, "{}", dims.join(" "));
    let costs: Vec<String> =
        inst.constraints.iter().map(|c| fmt_f64(-c.rhs)).collect();
    let _ = writeln!(out, "{}", costs.join(" "));

    let free_block = inst.block_dims.len() + 1;
    let emit = |matno: usize, blkno: usize, i: usize, j: usize, v: f64, out: &mut String| {
        if v != 0.0 {
            let _ = writeln!(out, "{matno} {blkno} {i} {j} {}", fmt_f64(v));
        }
    };

    // F_0 = -C, plus the +/- free-equality bounds c_f.
    for (j, c) in inst.cost_blocks.iter().enumerate() {
        for &(r, cc, v) in c.entries() {
            emit(0, j + 1, r + 1, cc + 1, -v, &mut out);
        }
    }
    for (t, &cf) in inst.cost_free.iter().enumerate() {
        emit(0, free_block, 2 * t + 1, 2 * t + 1, cf, &mut out);
        emit(0, free_block, 2 * t + 2, 2 * t + 2, -cf, &mut out);
    }

    // F_i = -A_i, plus the +/- free-coefficient entries.
    for (i, con) in inst.constraints.iter().enumerate() {
        for (j, a) in &con.terms {
            for &(r, c, v) in a.entries() {
                emit(i + 1, j + 1, r + 1, c + 1, -v, &mut out);
            }
        }
        for &(t, v) in &con.free {
            emit(i + 1, free_block, 2 * t + 1, 2 * t + 1, v, &mut out);
            emit(i + 1, free_block, 2 * t + 2, 2 * t + 2, -v, &mut out);
        }
    }
    out
}

fn fmt_f64(v: f64) -> String {
    // Shortest round-trip decimal; "-0" normalized away.
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Constraint, SdpInstance, SparseSym};
    use super::*;

    #[test]
    fn golden_tiny_instance() {
        let diag = |r: usize| SparseSym::from_entries(2, vec![(r, r, 1.0)]).unwrap();
        let off = SparseSym::from_entries(2, vec![(0, 1, 1.0)]).unwrap();
        let inst = SdpInstance {
            block_dims: vec![2],
            free_dim: 1,
            cost_blocks: vec![SparseSym::zero(2)],
            cost_free: vec![-1.0],
            constraints: vec![
                Constraint { terms: vec![(0, diag(0))], free: vec![(0, 1.0)], rhs: 1.0 },
                Constraint { terms: vec![(0, diag(1))], free: vec![(0, 1.0)], rhs: 1.0 },
                Constraint { terms: vec![(0, off)], free: vec![], rhs: 0.0 },
            ],
        };
        let got = write_sdpa_sparse(&inst);
        let want = "\
3
2
2 -2
-1 -1 0
0 2 1 1 -1
0 2 2 2 1
1 1 1 1 -1
1 2 1 1 1
1 2 2 2 -1
2 1 2 2 -1
2 2 1 1 1
2 2 2 2 -1
3 1 1 2 -1
";
        assert_eq!(got, want);
        // Byte-identical on repeat.
        assert_eq!(write_sdpa_sparse(&inst), got);
    }
}
