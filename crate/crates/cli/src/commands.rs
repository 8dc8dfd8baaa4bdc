//! Subcommand implementations producing deterministic tables.

use fermitrot::bounds::{
    rigorous_bound_low_order, scaling_bound_general, scaling_bound_path_dense,
    scaling_bound_sparse, BoundRecord,
};
use fermitrot::commutator::{chain_count_bound, gamma_enumeration, nested_commutator};
use fermitrot::fock::enumerate_sector;
use fermitrot::hamiltonian::assemble;
use fermitrot::pathcount::{closed_form_counts, degree_table, path_bound, CountRegime};
use fermitrot::seminorm::fermionic_seminorm;
use fermitrot::tightness::tightness_ratio_report;
use fermitrot::trotter::{fit_error_order, trotter_error};
use fermitrot::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::*;
use crate::table::{fmt_f64, fmt_opt_f64, fmt_opt_usize, Table};

fn instance_rng(seed: u64, instance: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (instance as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn run_error(cfg: &ErrorConfig, seed: u64) -> Result<Table> {
    let mut table = Table::new(vec!["kind", "instance", "p", "t", "r", "value"]);
    for instance in 0..cfg.instances {
        let mut rng = instance_rng(seed, instance);
        let coeff = cfg.family.build(&mut rng)?;
        for &p in &cfg.orders {
            let mut errors = Vec::with_capacity(cfg.times.len());
            for &t in &cfg.times {
                let err = trotter_error(p, &coeff, cfg.eta, t, cfg.steps)?;
                errors.push(err);
                table.push(vec![
                    "error".into(),
                    instance.to_string(),
                    p.to_string(),
                    fmt_f64(t),
                    cfg.steps.to_string(),
                    fmt_f64(err),
                ]);
            }
            let slope = fit_error_order(&cfg.times, &errors)?;
            table.push(vec![
                "slope".into(),
                instance.to_string(),
                p.to_string(),
                String::new(),
                cfg.steps.to_string(),
                fmt_f64(slope),
            ]);
        }
    }
    Ok(table)
}

/// Table plus the serializable bound records for JSON output.
pub fn run_bound(cfg: &BoundConfig, seed: u64) -> Result<(Table, Vec<BoundRecord>)> {
    let mut table = Table::new(vec![
        "instance",
        "p",
        "family",
        "value",
        "certified",
        "measured",
        "dominance_ratio",
    ]);
    let mut records = Vec::new();
    for instance in 0..cfg.instances {
        let mut rng = instance_rng(seed, instance);
        let coeff = cfg.family.build(&mut rng)?;
        let sector = enumerate_sector(coeff.n(), cfg.eta)?;
        let parts = assemble(&coeff, &sector)?;
        for &p in &cfg.orders {
            let measured = trotter_error(p, &coeff, cfg.eta, cfg.t, 1)?;
            let mut push = |family: &str, value: f64, certified: bool| {
                let ratio = if value > 0.0 {
                    Some(measured / value)
                } else {
                    None
                };
                records.push(BoundRecord {
                    family: family.into(),
                    params: serde_json::json!({
                        "instance": instance,
                        "p": p,
                        "n": coeff.n(),
                        "eta": cfg.eta,
                        "t": cfg.t,
                        "d": coeff.sparsity(),
                        "measured": measured,
                    }),
                    value,
                    certified,
                });
                table.push(vec![
                    instance.to_string(),
                    p.to_string(),
                    family.into(),
                    fmt_f64(value),
                    certified.to_string(),
                    fmt_f64(measured),
                    fmt_opt_f64(ratio),
                ]);
            };
            if p <= 2 {
                let rigorous =
                    rigorous_bound_low_order(p, &parts.hopping, &parts.interaction, cfg.t)?;
                push("rigorous_low_order", rigorous, true);
            }
            push(
                "general",
                scaling_bound_general(p, coeff.spectral_tau(), coeff.max_nu(), cfg.eta, cfg.t),
                false,
            );
            push(
                "sparse",
                scaling_bound_sparse(
                    p,
                    coeff.max_tau(),
                    coeff.max_nu(),
                    coeff.sparsity(),
                    cfg.eta,
                    cfg.t,
                ),
                false,
            );
            push(
                "path_dense",
                scaling_bound_path_dense(
                    p,
                    coeff.max_tau(),
                    coeff.max_nu(),
                    coeff.n(),
                    cfg.eta,
                    cfg.t,
                ),
                false,
            );
        }
    }
    Ok((table, records))
}

pub fn run_commutator(cfg: &CommutatorConfig, seed: u64) -> Result<Table> {
    let mut rng = instance_rng(seed, 0);
    let coeff = cfg.family.build(&mut rng)?;
    let sector = enumerate_sector(coeff.n(), cfg.eta)?;
    let parts = assemble(&coeff, &sector)?;
    let mut table = Table::new(vec!["gamma", "t_count", "seminorm", "chain_bound"]);
    for gamma in gamma_enumeration(cfg.p) {
        let comm = nested_commutator(&gamma, &parts.hopping, &parts.interaction)?;
        let norm = fermionic_seminorm(&comm)?;
        let cap = chain_count_bound(&gamma, &coeff, cfg.eta);
        table.push(vec![
            gamma.to_string(),
            gamma.t_count().to_string(),
            fmt_f64(norm),
            fmt_f64(cap),
        ]);
    }
    Ok(table)
}

pub fn run_pathcount(cfg: &PathcountConfig, seed: u64) -> Result<Table> {
    let mut rng = instance_rng(seed, 0);
    let coeff = cfg.family.build(&mut rng)?;
    let gamma = cfg.gamma_word()?;
    let sector = enumerate_sector(coeff.n(), cfg.eta)?;
    let degrees = degree_table(&sector, &gamma, &coeff, cfg.ruleset)?;
    let mut table = Table::new(vec!["kind", "label", "value"]);
    for (config, degree) in sector.configs().iter().zip(&degrees) {
        table.push(vec!["degree".into(), config.to_string(), fmt_f64(*degree)]);
    }
    let max_degree = degrees.iter().copied().fold(0.0f64, f64::max);
    table.push(vec![
        "max_degree".into(),
        String::new(),
        fmt_f64(max_degree),
    ]);
    let bound = path_bound(&gamma, &coeff, cfg.eta, cfg.ruleset)?;
    table.push(vec!["path_bound".into(), String::new(), fmt_f64(bound)]);
    let p = gamma.order();
    let sparse_cap = closed_form_counts(
        p,
        CountRegime::Sparse {
            d: coeff.sparsity(),
            eta: cfg.eta,
        },
    );
    table.push(vec![
        "closed_form_sparse".into(),
        String::new(),
        fmt_f64(sparse_cap),
    ]);
    let dense_cap = closed_form_counts(
        p,
        CountRegime::Dense {
            n: coeff.n(),
            eta: cfg.eta,
            t_count: gamma.t_count(),
        },
    );
    table.push(vec![
        "closed_form_dense".into(),
        String::new(),
        fmt_f64(dense_cap),
    ]);
    Ok(table)
}

pub fn run_tightness(cfg: &TightnessConfig) -> Result<Table> {
    let rows = tightness_ratio_report(cfg.family, &cfg.points, cfg.scale)?;
    let mut table = Table::new(vec![
        "family", "n", "eta", "d", "p", "value_re", "value_im", "leading", "ratio",
    ]);
    for row in rows {
        table.push(vec![
            row.family,
            row.n.to_string(),
            row.eta.to_string(),
            fmt_opt_usize(row.d),
            row.p.to_string(),
            fmt_f64(row.value_re),
            fmt_f64(row.value_im),
            fmt_f64(row.leading),
            fmt_opt_f64(row.ratio),
        ]);
    }
    Ok(table)
}

/// Returns the table plus whether every check passed.
pub fn run_selfcheck(_cfg: &SelfcheckConfig, seed: u64) -> Result<(Table, bool)> {
    let results = fermitrot::selfcheck::run(seed)?;
    let mut table = Table::new(vec!["check", "passed", "residual", "tolerance"]);
    let mut all = true;
    for check in &results {
        all &= check.passed;
        table.push(vec![
            check.name.clone(),
            check.passed.to_string(),
            fmt_f64(check.residual),
            fmt_f64(check.tolerance),
        ]);
    }
    Ok((table, all))
}
