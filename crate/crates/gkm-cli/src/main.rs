//! Command-line front end: graph construction, rank tables, presentation
//! certificates, reduction to generators, and the rank-2 long-root
//! counterexample.  Stdout is machine-parseable and deterministic;
//! progress goes to stderr.
//!
//! Exit codes: 0 success, 1 verification failed, 2 usage or input error,
//! 3 resource cap hit.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use gkm_core::cohomology::{graded_basis, hilbert_closed_form, hilbert_recurrence_a, CohomologyClass};
use gkm_core::gkmgraph::{build_family, build_from_roots, Family, LabeledGraph, LinearForm};
use gkm_core::presentation::{
    c2_counterexample, generator_lattice, reduce, theorem_ring, verify_presentation, GeneratorSet,
};
use gkm_core::ring::Ring;
use gkm_core::{Error, Limits};

#[derive(Parser)]
#[command(
    name = "gkm",
    version,
    about = "Exact graph cohomology of the labeled graphs of classical root systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphSelector {
    /// family name: A, B, C, D or Dminus
    #[arg(long)]
    family: Option<String>,
    /// rank (number of letters)
    #[arg(long)]
    n: Option<usize>,
    /// custom root list, semicolon-separated integer vectors ("1,-1,0;1,1,0")
    #[arg(long)]
    roots: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a labeled graph and print it as DOT or JSON
    Graph {
        #[command(flatten)]
        selector: GraphSelector,
        /// output format: dot or json
        #[arg(long, default_value = "dot")]
        format: String,
        /// write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-degree rank table compared against the closed form
    Rank {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// largest half-degree k to compute
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// coefficient ring: Int, Dyadic or Mod2 (default: the family's ring)
        #[arg(long)]
        ring: Option<String>,
        /// output format: table or json
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Verify the ring presentation degree by degree; prints a certificate
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// coefficient ring (default: the family's ring)
        #[arg(long)]
        ring: Option<String>,
    },
    /// Rewrite a member class (JSON file) as a polynomial in the generators
    Reduce {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// class file produced by this tool or by hand
        #[arg(long)]
        class: PathBuf,
        /// coefficient ring; must be the family's reduction ring
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The degree-6 class on the rank-2 long-root graph that needs 1/2
    Counterexample {
        /// write the class as JSON to this file
        #[arg(long)]
        emit_class: Option<PathBuf>,
        /// also confirm that twice the class lies in the integral span
        #[arg(long)]
        check_double: bool,
    },
}

fn parse_roots(spec: &str) -> Result<Vec<LinearForm>, Error> {
    let mut roots = Vec::new();
    for part in spec.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let coeffs: Result<Vec<i64>, _> = part.split(',').map(|x| x.trim().parse()).collect();
        let coeffs =
            coeffs.map_err(|_| Error::Usage(format!("bad root vector {part:?}")))?;
        roots.push(LinearForm::new(coeffs));
    }
    if roots.is_empty() {
        return Err(Error::Usage("empty root list".into()));
    }
    Ok(roots)
}

fn build_selected(selector: &GraphSelector, limits: &Limits) -> Result<LabeledGraph, Error> {
    match (&selector.family, selector.n, &selector.roots) {
        (Some(f), Some(n), None) => build_family(Family::parse(f)?, n, limits),
        (None, None, Some(r)) => build_from_roots(&parse_roots(r)?, limits),
        _ => Err(Error::Usage(
            "give either --family with --n, or --roots".into(),
        )),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Usage(format!("cannot write {}: {}", path.display(), e))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn ring_for(family: Family, requested: &Option<String>) -> Result<Ring, Error> {
    match requested {
        Some(s) => Ring::parse(s),
        None => Ok(theorem_ring(family)),
    }
}

fn cmd_graph(selector: &GraphSelector, format: &str, out: &Option<PathBuf>) -> Result<i32, Error> {
    let limits = Limits::from_env();
    let g = build_selected(selector, &limits)?;
    let text = match format {
        "dot" => g.to_dot(),
        "json" => serde_json::to_string_pretty(&g.to_json()).unwrap(),
        other => return Err(Error::Usage(format!("unknown format {other:?}"))),
    };
    emit(&text, out)?;
    Ok(0)
}

fn cmd_rank(
    family: &str,
    n: usize,
    max_degree: usize,
    ring: &Option<String>,
    format: &str,
) -> Result<i32, Error> {
    let limits = Limits::from_env();
    let family = Family::parse(family)?;
    let ring = ring_for(family, ring)?;
    let graph = Arc::new(build_family(family, n, &limits)?);
    let closed = hilbert_closed_form(family, n, max_degree)?;
    let recurrence = if family == Family::A {
        Some(hilbert_recurrence_a(n, max_degree)?)
    } else {
        None
    };
    // over the integers the long-root family keeps free ranks but the
    // generator span can be a strict sublattice; report its index
    let span_index = family == Family::C && ring == Ring::Int;

    let mut rows = Vec::new();
    let mut all_match = true;
    for k in 0..=max_degree {
        eprintln!("computing degree {} of {}", 2 * k, 2 * max_degree);
        let piece = graded_basis(&graph, k, ring, &limits)?;
        let computed = piece.rank();
        let expected = closed.coeffs[k].clone();
        let matches = expected == computed.into();
        all_match &= matches;
        let mut row = serde_json::json!({
            "k": k,
            "computed": computed,
            "closed_form": expected.to_string(),
            "match": matches,
        });
        if let Some(rec) = &recurrence {
            row["recurrence"] = serde_json::json!(rec.coeffs[k].to_string());
            all_match &= rec.coeffs[k] == computed.into();
        }
        if span_index {
            let gen = generator_lattice(&graph, k, GeneratorSet::TauT, ring, &limits)?;
            let lattice = piece
                .lattice()
                .ok_or_else(|| Error::Internal("graded lattice missing".into()))?;
            row["span_index"] = serde_json::json!(gen.index_in(lattice)?.to_string());
        }
        rows.push(row);
    }
    let payload = serde_json::json!({
        "family": family.name(),
        "n": n,
        "ring": ring.name(),
        "rows": rows,
        "all_match": all_match,
    });
    match format {
        "json" => println!("{}", serde_json::to_string_pretty(&payload).unwrap()),
        "table" => {
            let span_col = if span_index { "  span-index" } else { "" };
            let rec_col = if recurrence.is_some() { "  recurrence" } else { "" };
            println!("family {}  n = {}  ring {}", family.name(), n, ring.name());
            println!("  k  computed  closed-form{}{}  match", rec_col, span_col);
            for row in payload["rows"].as_array().unwrap() {
                let mut line = format!(
                    "{:>3}  {:>8}  {:>11}",
                    row["k"].as_u64().unwrap(),
                    row["computed"].as_u64().unwrap(),
                    row["closed_form"].as_str().unwrap()
                );
                if recurrence.is_some() {
                    line.push_str(&format!("  {:>10}", row["recurrence"].as_str().unwrap()));
                }
                if span_index {
                    line.push_str(&format!("  {:>10}", row["span_index"].as_str().unwrap()));
                }
                line.push_str(&format!("  {}", row["match"]));
                println!("{}", line);
            }
            println!("all_match: {}", all_match);
        }
        other => return Err(Error::Usage(format!("unknown format {other:?}"))),
    }
    Ok(if all_match { 0 } else { 1 })
}

fn cmd_verify(
    family: &str,
    n: usize,
    max_degree: usize,
    ring: &Option<String>,
) -> Result<i32, Error> {
    let limits = Limits::from_env();
    let family = Family::parse(family)?;
    let ring = ring_for(family, ring)?;
    eprintln!(
        "verifying the {} presentation at n = {} up to degree {}",
        family.name(),
        n,
        2 * max_degree
    );
    let cert = verify_presentation(family, n, max_degree, ring, &limits)?;
    println!("{}", serde_json::to_string_pretty(&cert.to_json()).unwrap());
    if cert.verified {
        Ok(0)
    } else {
        if let Some((name, _)) = cert.relations.iter().find(|(_, ok)| !ok) {
            eprintln!("first failure: relation {} does not vanish", name);
        } else if let Some(d) = cert
            .per_degree
            .iter()
            .find(|d| d.index.to_string() != "1" || d.span_ok == Some(false))
        {
            eprintln!(
                "first failure: k = {} has index {} in the full lattice",
                d.k, d.index
            );
        }
        Ok(1)
    }
}

fn cmd_reduce(
    family: &str,
    n: usize,
    class: &PathBuf,
    ring: &Option<String>,
    out: &Option<PathBuf>,
) -> Result<i32, Error> {
    let limits = Limits::from_env();
    let family = Family::parse(family)?;
    let expected = theorem_ring(family);
    if let Some(r) = ring {
        let r = Ring::parse(r)?;
        if r != expected {
            return Err(Error::Usage(format!(
                "reduction for family {} runs over {}",
                family.name(),
                expected.name()
            )));
        }
    }
    let graph = Arc::new(build_family(family, n, &limits)?);
    let text = std::fs::read_to_string(class)
        .map_err(|e| Error::Usage(format!("cannot read {}: {}", class.display(), e)))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Usage(format!("bad class JSON: {}", e)))?;
    let h = CohomologyClass::from_json(&graph, &value)?;
    let cert = reduce(&h, &limits)?;
    emit(
        &serde_json::to_string_pretty(&cert.to_json()).unwrap(),
        out,
    )?;
    Ok(0)
}

fn cmd_counterexample(emit_class: &Option<PathBuf>, check_double: bool) -> Result<i32, Error> {
    let limits = Limits::from_env();
    let c = c2_counterexample(&limits)?;
    println!("class on the rank-2 long-root graph, degree 6:");
    for v in 0..c.graph.num_vertices() {
        println!("  {}: {}", c.graph.vertex_name(v), c.class.value(v));
    }
    println!(
        "member over Z: {}; in Z-span of {{tau,t}}: {}; equals (1/2)(tau1-t2)(tau2-t2)(tau1-tau2+t1+t2): {}",
        if c.member_over_int { "yes" } else { "no" },
        if c.in_generator_lattice { "yes" } else { "no" },
        if c.equals_half_product { "yes" } else { "no" },
    );
    if check_double {
        println!(
            "2h in Z-span of {{tau,t}}: {}",
            if c.double_in_lattice { "yes" } else { "no" }
        );
    }
    if let Some(path) = emit_class {
        std::fs::write(path, serde_json::to_string_pretty(&c.class.to_json()).unwrap())
            .map_err(|e| Error::Usage(format!("cannot write {}: {}", path.display(), e)))?;
    }
    Ok(0)
}

fn run() -> Result<i32, Error> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Graph {
            selector,
            format,
            out,
        } => cmd_graph(selector, format, out),
        Command::Rank {
            family,
            n,
            max_degree,
            ring,
            format,
        } => cmd_rank(family, *n, *max_degree, ring, format),
        Command::Verify {
            family,
            n,
            max_degree,
            ring,
        } => cmd_verify(family, *n, *max_degree, ring),
        Command::Reduce {
            family,
            n,
            class,
            ring,
            out,
        } => cmd_reduce(family, *n, class, ring, out),
        Command::Counterexample {
            emit_class,
            check_double,
        } => cmd_counterexample(emit_class, *check_double),
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e);
            let code = match e {
                Error::Usage(_) | Error::NotMember(_) => 2,
                Error::Resource(_) => 3,
                Error::Internal(_) => 1,
            };
            std::process::exit(code);
        }
    }
}
