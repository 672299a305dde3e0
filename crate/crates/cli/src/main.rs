use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lcdcodes::codes::{CodeError, DEFAULT_BUDGET};
use lcdcodes::constructions::{gram_oracle, spectral_verdict, ConstructionSpec, PredicateVerdict};
use lcdcodes::enumerate::{configure_workers, Exec};
use lcdcodes::linalg::{eigen_spectrum, MatrixOverField, TridiagKind};
use lcdcodes::parse::{parse_construction, parse_element, parse_spec_line};
use lcdcodes::search::{search, SearchConfig};
use lcdcodes::tables;

const EXIT_USAGE: u8 = 1;
const EXIT_DISAGREE: u8 = 2;
const EXIT_TABLE_FAIL: u8 = 3;

/// LCD and small-hull codes from tridiagonal Toeplitz matrices.
#[derive(Parser, Debug)]
#[command(name = "lcdcodes", version)]
struct Cli {
    /// Maximum number of codewords to enumerate per code.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (1 forces sequential execution).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Machine-readable CSV output.
    #[arg(long, global = true)]
    csv: bool,
    /// Full report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print generator matrices.
    #[arg(long, global = true)]
    show_matrix: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code from a spec line and report its parameters and spectral verdict.
    Build { spec: String },
    /// Print the closed-form spectrum of the matrix in a spec line.
    Eig { spec: String },
    /// Rebuild the reference tables and compare with the printed parameters.
    Tables {
        /// Table numbers (default: all).
        ids: Vec<u8>,
    },
    /// Search polynomial tuples for LCD codes of large minimum distance.
    Search {
        /// Matrix part of a spec line, e.g. "q=2 n=4 a=1 b=1 inner=E".
        spec: String,
        /// Index of the derivative code.
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Comma-separated coefficient values (default: the whole field).
        #[arg(long)]
        coeffs: Option<String>,
        /// Screen with the Gram matrix instead of the spectral predicate.
        #[arg(long)]
        no_filter: bool,
        #[arg(long, default_value_t = 1 << 20)]
        max_candidates: u64,
        /// Print at most this many rows.
        #[arg(long)]
        top: Option<usize>,
    },
    /// Compare the spectral predicate with the Gram-matrix oracle.
    Check { spec: String },
}

struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl ToString) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.to_string() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let exec = match cli.workers {
        Some(0) => {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        Some(1) => Exec::Sequential,
        Some(n) => {
            if let Err(e) = configure_workers(n) {
                eprintln!("warning: {e}");
            }
            Exec::Parallel
        }
        None => Exec::default(),
    };
    let result = match &cli.command {
        Command::Build { spec } => cmd_build(&cli, spec, exec),
        Command::Eig { spec } => cmd_eig(&cli, spec),
        Command::Tables { ids } => cmd_tables(&cli, ids, exec),
        Command::Search { spec, t, max_degree, coeffs, no_filter, max_candidates, top } => {
            cmd_search(&cli, spec, *t, *max_degree, coeffs.as_deref(), *no_filter, *max_candidates, *top, exec)
        }
        Command::Check { spec } => cmd_check(&cli, spec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.msg.is_empty() {
                eprintln!("error: {}", f.msg);
            }
            ExitCode::from(f.code)
        }
    }
}

fn parse_spec(spec: &str) -> Result<ConstructionSpec, Failure> {
    parse_construction(spec).map_err(|e| usage(format!("{e}\n  {spec}")))
}

fn matrix_rows(m: &MatrixOverField) -> Vec<String> {
    let f = m.field();
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|&x| f.format_elem(x)).collect::<Vec<_>>().join(" "))
        .collect()
}

fn verdict_json(v: &PredicateVerdict) -> Value {
    let fmt = |xs: &[u32]| xs.iter().map(|&x| v.format_elem(x)).collect::<Vec<_>>();
    json!({
        "decision": v.decision,
        "extension": v.ctx.as_ref().map(|c| c.ext.order()),
        "witness_set": fmt(&v.witness_set),
        "probes": fmt(&v.probes),
        "probe_in_witness_set": v.probe_hit(),
        "hit_multiplicity": v.hit_multiplicity,
        "spectral_hull_dim": v.spectral_hull_dim,
        "oracle_hull_dim": v.oracle_hull_dim,
        "notes": v.notes,
    })
}

fn verdict_text(v: &PredicateVerdict) -> String {
    let fmt = |xs: &[u32]| xs.iter().map(|&x| v.format_elem(x)).collect::<Vec<_>>().join(", ");
    let mut s = format!("spectral: {}", v.decision);
    if let Some(ctx) = &v.ctx {
        s += &format!(
            " | GF({}) S={{{}}} probes={{{}}} probe in S: {} | hits={}",
            ctx.ext.order(),
            fmt(&v.witness_set),
            fmt(&v.probes),
            if v.probe_hit() { "yes" } else { "no" },
            v.hit_multiplicity
        );
    }
    if let Some(h) = v.spectral_hull_dim {
        s += &format!(" spectral_hull={h}");
    }
    for n in &v.notes {
        s += &format!("\n  note: {n}");
    }
    s
}

fn cmd_build(cli: &Cli, spec_str: &str, exec: Exec) -> Result<(), Failure> {
    let spec = parse_spec(spec_str)?;
    let code = spec.code().map_err(usage)?;
    let verdict = spectral_verdict(&spec).map_err(usage)?;
    let (report, notice) = match code.report(cli.budget, exec) {
        Ok(r) => (Some(r), None),
        Err(e @ CodeError::BudgetExceeded { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(usage(e)),
    };
    if cli.json {
        let out = json!({
            "spec": spec.to_string(),
            "generator": cli.show_matrix.then(|| matrix_rows(code.generator())),
            "report": report,
            "hull_dim": code.hull_dimension(),
            "budget_notice": notice,
            "verdict": verdict_json(&verdict),
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        return Ok(());
    }
    if cli.csv {
        match &report {
            Some(r) => print!("{}", r.weight_csv()),
            None => return Err(usage(notice.unwrap_or_default())),
        }
        return Ok(());
    }
    println!("spec: {spec}");
    if cli.show_matrix {
        for row in matrix_rows(&spec.generator().map_err(usage)?) {
            println!("  {row}");
        }
    }
    match &report {
        Some(r) => println!("{r}"),
        None => {
            let yn = if code.is_lcd() { 'y' } else { 'n' };
            println!(
                "[{},{},?]_{} inner={} hull={} lcd={yn} fsd=? griesmer_defect=?",
                code.length(),
                code.dimension(),
                code.field().order(),
                code.inner(),
                code.hull_dimension()
            );
            println!("notice: {}", notice.unwrap_or_default());
        }
    }
    println!("{}", verdict_text(&verdict));
    Ok(())
}

fn cmd_eig(cli: &Cli, spec_str: &str) -> Result<(), Failure> {
    let line = parse_spec_line(spec_str).map_err(|e| usage(format!("{e}\n  {spec_str}")))?;
    let tri = line.tridiag;
    let spectrum = eigen_spectrum(&tri).map_err(usage)?;
    let ext = &spectrum.ctx.ext;
    if cli.json {
        let out = json!({
            "matrix": tri.to_string(),
            "extension": ext.order(),
            "degree": spectrum.ctx.s,
            "blocks": spectrum.blocks,
            "eigenvalues": spectrum.pairs.iter().map(|&(x, k)| json!({"value": ext.format_elem(x), "multiplicity": k})).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        return Ok(());
    }
    if cli.csv {
        println!("eigenvalue,multiplicity");
        for &(x, k) in &spectrum.pairs {
            println!("{},{k}", ext.format_elem(x));
        }
        return Ok(());
    }
    println!("{tri} over GF({})", tri.field.order());
    for d in &spectrum.blocks {
        let label = if tri.kind == TridiagKind::TPrime { format!(" (block T_{})", d.n) } else { String::new() };
        println!("n+1 = {} = {}^{} * {}: r={} m={}{label}", d.n + 1, tri.field.characteristic(), d.r, d.m + 1, d.r, d.m);
    }
    println!("eigenvalues in GF({}) = GF({}^{}):", ext.order(), tri.field.order(), spectrum.ctx.s);
    for &(x, k) in &spectrum.pairs {
        println!("  {} ×{k}", ext.format_elem(x));
    }
    println!("total multiplicity {}", spectrum.total_multiplicity());
    if cli.show_matrix {
        for row in matrix_rows(&tri.build()) {
            println!("  {row}");
        }
    }
    Ok(())
}

fn cmd_tables(cli: &Cli, ids: &[u8], exec: Exec) -> Result<(), Failure> {
    let ids: Vec<u8> = if ids.is_empty() { (1..=6).collect() } else { ids.to_vec() };
    if let Some(bad) = ids.iter().find(|&&t| !(1..=6).contains(&t)) {
        return Err(usage(format!("no table {bad}; tables are 1 to 6")));
    }
    let mut all = Vec::new();
    for &t in &ids {
        all.push((t, tables::check_table(t, cli.budget, exec)));
    }
    if cli.json {
        let out: Vec<Value> = all.iter().map(|(t, rows)| json!({"table": t, "title": tables::title(*t), "rows": rows})).collect();
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else if cli.csv {
        let rows: Vec<_> = all.iter().flat_map(|(_, r)| r.iter().cloned()).collect();
        print!("{}", tables::to_csv(&rows));
    } else {
        for (t, rows) in &all {
            println!("{}", tables::to_markdown(*t, rows));
        }
    }
    let failed = all.iter().flat_map(|(_, r)| r).filter(|o| o.failed()).count();
    if failed > 0 {
        return Err(Failure { code: EXIT_TABLE_FAIL, msg: format!("{failed} row(s) failed") });
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    cli: &Cli,
    spec_str: &str,
    t: usize,
    max_degree: usize,
    coeffs: Option<&str>,
    no_filter: bool,
    max_candidates: u64,
    top: Option<usize>,
    exec: Exec,
) -> Result<(), Failure> {
    let line = parse_spec_line(spec_str).map_err(|e| usage(format!("{e}\n  {spec_str}")))?;
    let field = line.tridiag.field.clone();
    let coefficients = match coeffs {
        None => field.elements().collect(),
        Some("") => Vec::new(),
        Some(list) => list
            .split(',')
            .map(|s| parse_element(&field, s.trim()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| usage(format!("--coeffs: {e}")))?,
    };
    let cfg = SearchConfig {
        tridiag: line.tridiag,
        inner: line.inner,
        t,
        max_degree,
        coefficients,
        budget: cli.budget,
        max_candidates,
        spectral_filter: !no_filter,
        exec,
    };
    let size = cfg.space_size();
    if !cli.json && !cli.csv {
        println!("search space: {size} candidates");
    }
    let mut rows = search(&cfg).map_err(usage)?;
    if let Some(k) = top {
        rows.truncate(k);
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&json!({"space_size": size.to_string(), "rows": rows})).expect("serializable"));
    } else if cli.csv {
        println!("rank,polynomials,n,k,d");
        for (i, r) in rows.iter().enumerate() {
            println!("{},\"{}\",{},{},{}", i + 1, r.polynomials.join(";"), r.n, r.k, r.d);
        }
    } else {
        println!("| rank | f | parameters |\n|---|---|---|");
        for (i, r) in rows.iter().enumerate() {
            println!("| {} | `{}` | [{},{},{}] |", i + 1, r.polynomials.join(";"), r.n, r.k, r.d);
        }
    }
    Ok(())
}

fn cmd_check(cli: &Cli, spec_str: &str) -> Result<(), Failure> {
    let spec = parse_spec(spec_str)?;
    let verdict = spectral_verdict(&spec).map_err(usage)?;
    let oracle = gram_oracle(&spec).map_err(usage)?;
    let agree = verdict.agrees_with(oracle.hull_dim);
    if cli.json {
        let out = json!({
            "spec": spec.to_string(),
            "verdict": verdict_json(&verdict),
            "oracle_hull_dim": oracle.hull_dim,
            "agree": agree,
            "gram": (!agree || cli.show_matrix).then(|| matrix_rows(&oracle.gram)),
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("spec: {spec}");
        println!("{}", verdict_text(&verdict));
        let oracle_decision = match oracle.hull_dim {
            0 => "LCD".to_string(),
            1 => "one-dim hull".to_string(),
            h => format!("not LCD (hull dimension {h})"),
        };
        println!("oracle: {oracle_decision}");
        println!("{}", if agree { "agree" } else { "DISAGREE" });
        if !agree || cli.show_matrix {
            if let Ok(s) = eigen_spectrum(&spec.tridiag) {
                for &(x, k) in &s.pairs {
                    println!("  eigenvalue {} ×{k}", s.ctx.ext.format_elem(x));
                }
            }
            println!("Gram matrix:");
            for row in matrix_rows(&oracle.gram) {
                println!("  {row}");
            }
        }
    }
    if agree {
        Ok(())
    } else {
        Err(Failure { code: EXIT_DISAGREE, msg: String::new() })
    }
}
