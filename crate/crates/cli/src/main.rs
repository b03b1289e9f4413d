//! Command-line front end: parse monomial maps, classify them, count gaps,
//! build joins, and print the closed-form bound reports, as aligned text or
//! versioned JSON.
//!
//! Exit codes: 0 success (any verdict), 2 input error, 3 internal
//! inconsistency between the classifier and the certified count, 4 resource
//! cap reached.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use monogerm::classify::{classify, structural_finiteness, Verdict};
use monogerm::germ::MonomialMap;
use monogerm::invariants::{self, BoundReport};
use monogerm::join::JoinSpec;
use monogerm::monoid::{self, DeltaOptions, DeltaResult, MonoidError};
use monogerm::parse::parse_map;
use monogerm::report::{
    DeltaReport, InputEcho, Report, StabilityReport, Timings, VerdictReport, SCHEMA_VERSION,
};
use monogerm::semigroup::{NumericalSemigroup, SemigroupError};

#[derive(Parser)]
#[command(
    name = "monogerm",
    about = "Invariants and finiteness classification of monomial map-germs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: classification, delta, codimension, optional bounds
    Analyze(MapArgs),
    /// Gap, Apéry and conductor table of a numerical semigroup
    Semigroup {
        /// Generators, e.g. `4 5` or `4,5`
        #[arg(required = true)]
        generators: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Build an elementary join from a JSON description and analyze it
    Join {
        /// Inline JSON, or a path when --file is set
        spec: String,
        /// Treat SPEC as a file path
        #[arg(long)]
        file: bool,
        #[command(flatten)]
        opts: AnalysisOpts,
    },
    /// Delta invariant and monomial basis only
    Delta(MapArgs),
    /// Classification and normal form only (no gap counting)
    Classify(MapArgs),
    /// Applicable closed-form bound reports
    Bounds(MapArgs),
    /// Double points of a stable perturbation, for p = 2n
    Dpoints(MapArgs),
    /// Run the built-in verification suite
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args)]
struct MapArgs {
    /// Map in surface syntax (`vars x,y; x, y^2, ...`), or JSON when it
    /// starts with `{`, or a path when --file is set
    map: String,
    /// Treat MAP as a file path
    #[arg(long)]
    file: bool,
    #[command(flatten)]
    opts: AnalysisOpts,
}

#[derive(Args, Clone, Copy)]
struct AnalysisOpts {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cell cap for the membership box (resource guard)
    #[arg(long, default_value_t = 100_000_000)]
    max_box: usize,
    /// List the whole monomial basis instead of the first 200 entries
    #[arg(long)]
    full_basis: bool,
    /// Include the closed-form bound reports
    #[arg(long)]
    bounds: bool,
    /// Include timings in the output (off by default so identical inputs
    /// produce byte-identical output)
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

enum CliError {
    Input(String),
    Internal(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
            CliError::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<MonoidError> for CliError {
    fn from(e: MonoidError) -> Self {
        match e {
            MonoidError::InternalInconsistency { .. } => CliError::Internal(e.to_string()),
            MonoidError::BoxTooLarge { .. } => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        match e {
            SemigroupError::ModulusTooLarge(_) => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(args) => {
            let map = load_map(&args)?;
            let report = build_report(&map, args.opts, true)?;
            print_report(&map, &report, args.opts.format);
            Ok(())
        }
        Command::Delta(args) => {
            let map = load_map(&args)?;
            let report = build_report(&map, args.opts, false)?;
            print_report(&map, &report, args.opts.format);
            Ok(())
        }
        Command::Classify(args) => {
            let map = load_map(&args)?;
            cmd_classify(&map, args.opts)
        }
        Command::Bounds(args) => {
            let map = load_map(&args)?;
            cmd_bounds(&map, args.opts)
        }
        Command::Dpoints(args) => {
            let map = load_map(&args)?;
            cmd_dpoints(&map, args.opts)
        }
        Command::Semigroup { generators, format } => cmd_semigroup(&generators, format),
        Command::Join { spec, file, opts } => cmd_join(&spec, file, opts),
        Command::Selftest { seed } => cmd_selftest(seed),
    }
}

fn load_map(args: &MapArgs) -> Result<MonomialMap, CliError> {
    let text = if args.file {
        std::fs::read_to_string(&args.map)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", args.map)))?
    } else {
        args.map.clone()
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        MonomialMap::from_interchange_json(trimmed).map_err(|e| CliError::Input(e.to_string()))
    } else {
        parse_map(trimmed).map_err(|e| CliError::Input(e.to_string()))
    }
}

/// Runs classification and gap counting. When the structural criterion rules
/// the complement infinite, the slow box growth is skipped: the certified
/// count could only confirm the same witness.
fn compute_delta(map: &MonomialMap, opts: AnalysisOpts) -> Result<DeltaResult, CliError> {
    let options = DeltaOptions {
        max_box_cells: opts.max_box,
    };
    match structural_finiteness(map) {
        Err(witness) => Ok(DeltaResult::Infinite { witness }),
        Ok(_) => Ok(monoid::delta(map, options)?),
    }
}

fn build_report(map: &MonomialMap, opts: AnalysisOpts, full: bool) -> Result<Report, CliError> {
    let t0 = Instant::now();
    let verdict = classify(map);
    let classify_ms = t0.elapsed().as_secs_f64() * 1e3;

    let t1 = Instant::now();
    let delta_result = compute_delta(map, opts)?;
    let delta_ms = t1.elapsed().as_secs_f64() * 1e3;

    let basis_cap = if opts.full_basis { usize::MAX } else { 200 };
    let le_codimension = match (&delta_result, full) {
        (DeltaResult::Finite { delta, .. }, true) => Some(map.p() as u64 * delta),
        _ => None,
    };
    let stability = if full {
        match &delta_result {
            DeltaResult::Finite { delta, .. } => Some(StabilityReport {
                stable: *delta == 0,
                caveat_low_target: map.p() < 2 * map.n(),
            }),
            DeltaResult::Infinite { .. } => Some(StabilityReport {
                stable: false,
                caveat_low_target: map.p() < 2 * map.n(),
            }),
            DeltaResult::Inconclusive { .. } => None,
        }
    } else {
        None
    };
    let bounds = if opts.bounds && full {
        applicable_bounds(map, &delta_result, opts)
    } else {
        Vec::new()
    };

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        input: InputEcho::new(map),
        diagnostics: map.diagnostics(),
        verdict: VerdictReport::new(map, &verdict),
        normal_form: if full { verdict.normal_form(map) } else { None },
        delta: DeltaReport::new(map, &delta_result, basis_cap),
        le_codimension,
        stability,
        bounds,
        timings_ms: opts.timings.then_some(Timings {
            classify_ms,
            delta_ms,
        }),
    })
}

/// The closed-form reports that apply to this map's shape.
fn applicable_bounds(
    map: &MonomialMap,
    delta_result: &DeltaResult,
    opts: AnalysisOpts,
) -> Vec<BoundReport> {
    let mut out = Vec::new();
    let decomposition = match structural_finiteness(map) {
        Ok(d) => d,
        Err(_) => return out,
    };

    if let DeltaResult::Finite { delta, .. } = delta_result {
        out.push(BoundReport {
            quantity: "A_e-codimension".into(),
            lower: None,
            upper: Some(map.p() as i128 * *delta as i128),
            exact: None,
            provenance: vec!["pullback-codimension ceiling p·delta".into()],
            caveats: Vec::new(),
        });
    }

    // the sandwich applies to exact elementary corank-one joins
    if decomposition.corank() == 1
        && decomposition.residual.is_empty()
        && is_exact_reconstruction(map, &decomposition)
    {
        let lambdas: Vec<u64> = decomposition.links.iter().map(|row| row[0]).collect();
        if !lambdas.is_empty() {
            if let Ok(r) = invariants::delta_bounds_corank_one(
                map.n(),
                &decomposition.curves[0],
                &lambdas,
                Some(DeltaOptions {
                    max_box_cells: opts.max_box,
                }),
            ) {
                out.push(r);
            }
            if let Ok(r) =
                invariants::aecod_bounds_corank_one(map.n(), &decomposition.curves[0], &lambdas)
            {
                out.push(r);
            }
        }
    }

    // full-corank joins carry the curve-delta floor and conductor ceiling
    if decomposition.identity_vars.is_empty()
        && decomposition.corank() >= 2
        && decomposition.residual.is_empty()
        && is_exact_reconstruction(map, &decomposition)
    {
        if let Ok(r) = invariants::delta_bounds_full_corank(&decomposition.curves) {
            out.push(r);
        }
    }

    if let Ok(fold) = invariants::fold_report(
        map,
        DeltaOptions {
            max_box_cells: opts.max_box,
        },
    ) {
        if let Some(d) = fold.double_points {
            out.push(BoundReport {
                quantity: "double points of a stable perturbation".into(),
                lower: Some(d as i128),
                upper: Some(d as i128),
                exact: Some(d as i128),
                provenance: vec!["fold identity with the delta invariant".into()],
                caveats: Vec::new(),
            });
        }
        out.push(fold.aecod);
        out.push(fold.conditional_upper);
    } else if map.p() == 2 * map.n() {
        if let Ok(d) = invariants::double_points_of_map(map) {
            out.push(BoundReport {
                quantity: "double points of a stable perturbation".into(),
                lower: Some(d as i128),
                upper: Some(d as i128),
                exact: Some(d as i128),
                provenance: vec!["weighted-degree count".into()],
                caveats: Vec::new(),
            });
        }
    }
    out
}

/// True when the decomposition reconstructs the map exactly up to component
/// order, i.e. the map is an elementary join on the nose.
fn is_exact_reconstruction(map: &MonomialMap, d: &monogerm::classify::JoinDecomposition) -> bool {
    let rebuilt = d.reconstruct(map.variable_names());
    let mut a: Vec<_> = map.components().to_vec();
    let mut b: Vec<_> = rebuilt.components().to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

fn print_report(map: &MonomialMap, report: &Report, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        ),
        Format::Table => print!("{}", render_table(map, report)),
    }
}

fn render_table(map: &MonomialMap, report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "map            {}", report.input.text);
    let _ = writeln!(
        out,
        "dimensions     n = {}, p = {}, corank {}",
        report.input.n,
        report.input.p,
        map.corank()
    );
    for d in &report.diagnostics {
        let _ = writeln!(out, "note           {d}");
    }
    let verdict = match &report.verdict {
        VerdictReport::Immersion => "immersion (A-stable)".to_string(),
        VerdictReport::Finite { corank, .. } => format!("A-finite (corank {corank})"),
        VerdictReport::NotFinite { reason, .. } => format!("not A-finite: {reason}"),
        VerdictReport::OutOfScope { p, required } => {
            format!("no verdict issued: p = {p} < {required} = 2n")
        }
    };
    let _ = writeln!(out, "verdict        {verdict}");
    if let VerdictReport::NotFinite { witness_family, .. } = &report.verdict {
        let _ = writeln!(out, "witness        {witness_family}");
    }
    if let Some(nf) = &report.normal_form {
        let _ = writeln!(out, "normal form    {nf}");
    }
    match &report.delta {
        DeltaReport::Finite {
            delta,
            basis_size,
            basis,
            basis_truncated,
        } => {
            let _ = writeln!(out, "delta          {delta}");
            let note = if *basis_truncated {
                format!("(first {} of {}) ", basis.len(), basis_size)
            } else {
                String::new()
            };
            let _ = writeln!(out, "basis          {note}{}", basis.join(", "));
        }
        DeltaReport::Infinite { witness } => {
            let _ = writeln!(out, "delta          infinite ({witness})");
        }
        DeltaReport::Inconclusive { bound_reached } => {
            let _ = writeln!(
                out,
                "delta          inconclusive at box bound {bound_reached}"
            );
        }
    }
    if let Some(l) = report.le_codimension {
        let _ = writeln!(out, "L_e-codim      {l}");
    }
    if let Some(s) = &report.stability {
        let caveat = if s.caveat_low_target {
            " (p < 2n: stability equivalence not guaranteed)"
        } else {
            ""
        };
        let _ = writeln!(out, "stable         {}{}", s.stable, caveat);
    }
    for b in &report.bounds {
        let _ = writeln!(out, "bound          {}", render_bound(b));
    }
    if let Some(t) = &report.timings_ms {
        let _ = writeln!(
            out,
            "timings        classify {:.3} ms, delta {:.3} ms",
            t.classify_ms, t.delta_ms
        );
    }
    out
}

fn render_bound(b: &BoundReport) -> String {
    let mut s = format!("{}: ", b.quantity);
    match (b.display_lower(), b.upper) {
        (Some(l), Some(u)) if Some(l) == b.exact && Some(u) == b.exact => {
            let _ = write!(s, "= {l}");
        }
        (Some(l), Some(u)) => {
            let _ = write!(s, "in [{l}, {u}]");
        }
        (None, Some(u)) => {
            let _ = write!(s, "≤ {u}");
        }
        (Some(l), None) => {
            let _ = write!(s, "≥ {l}");
        }
        (None, None) => {}
    }
    if let Some(e) = b.exact {
        if b.display_lower() != b.exact || b.upper != b.exact {
            let _ = write!(s, " (exact {e})");
        }
    }
    if let Some(raw) = b.lower {
        if raw < 0 {
            let _ = write!(s, " [raw lower {raw}]");
        }
    }
    let _ = write!(s, " — {}", b.provenance.join(", "));
    for c in &b.caveats {
        let _ = write!(s, "; caveat: {c}");
    }
    s
}

fn cmd_classify(map: &MonomialMap, opts: AnalysisOpts) -> Result<(), CliError> {
    let verdict = classify(map);
    match opts.format {
        Format::Json => {
            let payload = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "input": InputEcho::new(map),
                "verdict": VerdictReport::new(map, &verdict),
                "normal_form": verdict.normal_form(map),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).expect("serializes")
            );
        }
        Format::Table => {
            println!("map            {}", map.to_surface_syntax());
            println!("verdict        {verdict}");
            match &verdict {
                Verdict::NotFinite(reason) => {
                    println!("reason         {}", reason.describe(map));
                }
                _ => {
                    if let Some(nf) = verdict.normal_form(map) {
                        println!("normal form    {nf}");
                    }
                }
            }
        }
    }
    Ok(())
}

fn cmd_bounds(map: &MonomialMap, opts: AnalysisOpts) -> Result<(), CliError> {
    let delta_result = compute_delta(map, opts)?;
    let bounds = applicable_bounds(map, &delta_result, opts);
    match opts.format {
        Format::Json => {
            let payload = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "input": InputEcho::new(map),
                "delta": DeltaReport::new(map, &delta_result, 0),
                "bounds": bounds,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).expect("serializes")
            );
        }
        Format::Table => {
            println!("map            {}", map.to_surface_syntax());
            if let Some(d) = delta_result.finite_delta() {
                println!("delta          {d}");
            }
            if bounds.is_empty() {
                println!("bounds         none apply to this shape");
            }
            for b in &bounds {
                println!("bound          {}", render_bound(b));
            }
        }
    }
    Ok(())
}

fn cmd_dpoints(map: &MonomialMap, opts: AnalysisOpts) -> Result<(), CliError> {
    let d = invariants::double_points_of_map(map).map_err(|e| CliError::Input(e.to_string()))?;
    match opts.format {
        Format::Json => {
            let payload = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "input": InputEcho::new(map),
                "double_points": d,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).expect("serializes")
            );
        }
        Format::Table => {
            println!("map            {}", map.to_surface_syntax());
            println!("double points  {d}");
        }
    }
    Ok(())
}

fn cmd_semigroup(raw: &[String], format: Format) -> Result<(), CliError> {
    let mut gens = Vec::new();
    for part in raw.iter().flat_map(|s| s.split(',')) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        gens.push(
            part.parse::<u64>()
                .map_err(|_| CliError::Input(format!("`{part}` is not a generator")))?,
        );
    }
    let s = NumericalSemigroup::from_generators(&gens)?;
    let apery = s.apery_sequence(s.multiplicity())?;
    let gaps = s.gaps();
    match format {
        Format::Json => {
            let payload = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "generators": s.generators(),
                "multiplicity": s.multiplicity(),
                "apery": apery,
                "gaps": gaps,
                "conductor": s.conductor(),
                "delta": s.delta(),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).expect("serializes")
            );
        }
        Format::Table => {
            println!("semigroup      ⟨{}⟩", join_u64(s.generators()));
            println!("multiplicity   {}", s.multiplicity());
            println!("apery          {}", join_u64(&apery));
            if gaps.is_empty() {
                println!("gaps           none");
            } else {
                println!("gaps           {}", join_u64(&gaps));
            }
            println!("conductor      {}", s.conductor());
            println!("delta          {}", s.delta());
        }
    }
    Ok(())
}

fn join_u64(v: &[u64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_join(spec: &str, from_file: bool, opts: AnalysisOpts) -> Result<(), CliError> {
    let text = if from_file {
        std::fs::read_to_string(spec)
            .map_err(|e| CliError::Input(format!("cannot read {spec}: {e}")))?
    } else {
        spec.to_string()
    };
    let spec: JoinSpec =
        serde_json::from_str(text.trim()).map_err(|e| CliError::Input(e.to_string()))?;
    let map = spec.build().map_err(|e| CliError::Input(e.to_string()))?;
    if opts.format == Format::Table {
        println!("constructed    {}", map.to_surface_syntax());
    }
    let report = build_report(&map, opts, true)?;
    print_report(&map, &report, opts.format);
    Ok(())
}

fn cmd_selftest(seed: u64) -> Result<(), CliError> {
    let results = monogerm::selftest::run_all(seed);
    let mut failed = 0usize;
    for r in &results {
        println!(
            "{} {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
        if !r.passed {
            failed += 1;
        }
    }
    println!(
        "selftest: {}/{} checks passed (seed {seed})",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        return Err(CliError::Internal(format!("{failed} checks failed")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_error_class() {
        let inconsistency: CliError =
            MonoidError::InternalInconsistency { bound_reached: 64 }.into();
        assert_eq!(inconsistency.code(), 3);

        let resource: CliError = MonoidError::BoxTooLarge {
            cells: 1 << 40,
            cap: 1 << 20,
        }
        .into();
        assert_eq!(resource.code(), 4);

        let resource: CliError = SemigroupError::ModulusTooLarge(1 << 40).into();
        assert_eq!(resource.code(), 4);

        let input: CliError = SemigroupError::NonPrimitive(3).into();
        assert_eq!(input.code(), 2);
    }
}
