use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polynomial cost factor kept next to its symbolic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub expr: String,
    pub value: u128,
}

impl Factor {
    fn new(expr: impl Into<String>, value: u128) -> Self {
        Factor { expr: expr.into(), value }
    }
}

/// Structural costs of the streamed implementation; every factor carries an
/// implicit `log₂^p(...)` multiplier that is never evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub r_prime: usize,
    pub k: usize,
    pub l: usize,
    pub num_simple_cg: usize,
    pub num_embedding_cg: usize,
    pub num_inverse_cg: usize,
    /// Bits for the input and output staircase registers, dense encoding.
    pub input_label_bits: usize,
    pub output_label_bits: usize,
    pub site_bits: usize,
    pub memory: Factor,
    pub gates_uss: Factor,
    pub gates_emit: Factor,
    pub gates_embed: Factor,
    pub gates_total: Factor,
    pub log_factor: String,
}

/// One line of an application comparison table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub application: String,
    pub memory: Factor,
    pub gates: Factor,
    pub log_factor: String,
}

fn bits(x: usize) -> usize {
    (usize::BITS - x.leading_zeros()) as usize
}

fn pow(x: usize, e: u32) -> u128 {
    (x as u128).pow(e)
}

pub fn resource_estimate(m: usize, n: usize, d: usize, r: usize, r_prime: usize, k: usize, l: usize) -> Result<CostReport> {
    if d == 0 || r > d || r_prime > d {
        return Err(Error::Validation(format!("need r, r' ≤ d, got r={r}, r'={r_prime}, d={d}")));
    }
    let rt = r.max(r_prime);
    let uss = m as u128 * pow(r, 3) * d as u128;
    let emit = n as u128 * pow(r_prime, 3) * d as u128;
    let embed = (k + l) as u128 * d as u128 * pow(rt, 3);
    Ok(CostReport {
        m,
        n,
        d,
        r,
        r_prime,
        k,
        l,
        num_simple_cg: m,
        num_embedding_cg: k + l,
        num_inverse_cg: n,
        input_label_bits: r * bits(m),
        output_label_bits: r_prime * bits(n),
        site_bits: bits(d.saturating_sub(1)).max(1),
        memory: Factor::new("(r+r')·d", ((r + r_prime) * d) as u128),
        gates_uss: Factor::new("m·r³·d", uss),
        gates_emit: Factor::new("n·r'³·d", emit),
        gates_embed: Factor::new("(k+l)·d·r̃³", embed),
        gates_total: Factor::new("m·r³·d + n·r'³·d + (k+l)·d·r̃³", uss + emit + embed),
        log_factor: "log₂^p(d,m,n,1/ε)".into(),
    })
}

impl CostReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "m={} n={} d={} r={} r'={} k={} l={}", self.m, self.n, self.d, self.r, self.r_prime, self.k, self.l);
        let _ = writeln!(s, "simple CG        {}", self.num_simple_cg);
        let _ = writeln!(s, "embedding CG     {}", self.num_embedding_cg);
        let _ = writeln!(s, "inverse CG       {}", self.num_inverse_cg);
        let _ = writeln!(s, "label bits       {} in, {} out, {} per site", self.input_label_bits, self.output_label_bits, self.site_bits);
        for (name, f) in [
            ("memory", &self.memory),
            ("gates (uss)", &self.gates_uss),
            ("gates (emit)", &self.gates_emit),
            ("gates (embed)", &self.gates_embed),
            ("gates (total)", &self.gates_total),
        ] {
            let _ = writeln!(s, "{name:<16} {:<34} = {:>10} × {}", f.expr, f.value, self.log_factor);
        }
        s
    }
}

/// Rows for symmetrization (`m, r`), cloning (`m → n`) and purity amplification (`m → 1`, `r = d`).
pub fn application_rows(m: usize, n: usize, d: usize, r: usize) -> Vec<TableRow> {
    let log = |args: &str| format!("log₂^p({args},1/ε)");
    vec![
        TableRow {
            application: "symmetrization".into(),
            memory: Factor::new("r·d", (r * d) as u128),
            gates: Factor::new("m·r³·d", m as u128 * pow(r, 3) * d as u128),
            log_factor: log("d,m"),
        },
        TableRow {
            application: "cloning".into(),
            memory: Factor::new("d", d as u128),
            gates: Factor::new("n·d", (n * d) as u128),
            log_factor: log("d,n"),
        },
        TableRow {
            application: "purity amplification".into(),
            memory: Factor::new("d²", pow(d, 2)),
            gates: Factor::new("m·d⁴", m as u128 * pow(d, 4)),
            log_factor: log("d,m"),
        },
    ]
}

pub fn rows_to_table(rows: &[TableRow]) -> String {
    let mut s = format!("{:<22} {:<18} {:<18} {}\n", "application", "memory", "gates", "log factor");
    for row in rows {
        let _ = writeln!(
            s,
            "{:<22} {:<18} {:<18} {}",
            row.application,
            format!("{} = {}", row.memory.expr, row.memory.value),
            format!("{} = {}", row.gates.expr, row.gates.value),
            row.log_factor
        );
    }
    s
}
