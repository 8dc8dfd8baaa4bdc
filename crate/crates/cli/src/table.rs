//! Deterministic table output: CSV with RFC-4180 quoting or JSON, both
//! carrying a provenance header (version, seed, config hash).

use std::io::Write;

/// Shortest round-trip decimal form of a float (Rust's `Display`).
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

pub fn fmt_opt_f64(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn fmt_opt_usize(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

#[derive(Debug, Clone)]
pub struct Provenance {
    pub version: &'static str,
    pub seed: u64,
    pub config_hash: String,
}

impl Provenance {
    pub fn new(seed: u64, subcommand: &str, config_bytes: &[u8]) -> Self {
        let mut hash: u64 = 0xcbf29ce484222325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                hash ^= b as u64;
                hash = hash.wrapping_mul(0x100000001b3);
            }
        };
        eat(subcommand.as_bytes());
        eat(&[0]);
        eat(config_bytes);
        Provenance {
            version: env!("CARGO_PKG_VERSION"),
            seed,
            config_hash: format!("fnv1a:{hash:016x}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') || field.contains('\r') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn write_csv(out: &mut dyn Write, prov: &Provenance, table: &Table) -> std::io::Result<()> {
    writeln!(out, "# fermitrot {}", prov.version)?;
    writeln!(out, "# seed {}", prov.seed)?;
    writeln!(out, "# config {}", prov.config_hash)?;
    writeln!(out, "{}", table.columns.join(","))?;
    for row in &table.rows {
        let line: Vec<String> = row.iter().map(|f| csv_quote(f)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_json(out: &mut dyn Write, prov: &Provenance, table: &Table) -> std::io::Result<()> {
    let doc = serde_json::json!({
        "provenance": {
            "version": prov.version,
            "seed": prov.seed,
            "config_hash": prov.config_hash,
        },
        "columns": table.columns,
        "rows": table.rows,
    });
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&doc).expect("table serializes")
    )
}
