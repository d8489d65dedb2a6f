use std::path::{Path, PathBuf};

use orlicz_approx::harness::{
    bernstein_check, inverse_theorem_check, inverse_weighted_sum_bound, jackson_chain_check,
    k_functional_equivalence_check, run_suite, verdicts_to_csv, verdicts_to_json, SuiteConfig, Verdict,
};
use orlicz_approx::io::{parse_samples, parse_space, parse_spectral_function};
use orlicz_approx::seq_norms::{luxemburg_norm, orlicz_norm};
use orlicz_approx::smoothness::{k_functional, modulus_estimate};
use orlicz_approx::spectral::coefficients_from_samples;
use orlicz_approx::{
    approx::best_approximation, ExponentWeightPair, FractionalOrder, NormQuery, PsiWeights, SpectralFunction,
    SupSearchPolicy,
};

use crate::args::{Command, Format, RunArgs};
use crate::output::{Cell, Document, Node, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] orlicz_approx::Error),
}

const CORPUS_FUNCTIONS: [(&str, &str); 2] = [
    ("harmonic5", include_str!("../corpus/harmonic5.json")),
    ("mixed", include_str!("../corpus/mixed.json")),
];
const CORPUS_SPACES: [(&str, &str); 2] = [
    ("space_l2", include_str!("../corpus/space_l2.json")),
    ("space_variable", include_str!("../corpus/space_variable.json")),
];
const CORPUS_SAMPLES: &str = include_str!("../corpus/samples_mixed.json");

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

/// Parses a spectral function, or samples on a uniform grid (top-level array)
/// turned into coefficients up to the largest unaliased frequency.
fn parse_function(text: &str, source: &str) -> Result<SpectralFunction<f64>, CliError> {
    if !text.trim_start().starts_with('[') {
        return Ok(parse_spectral_function(text, source)?);
    }
    let samples = parse_samples(text, source)?;
    if samples.len() < 3 {
        return Err(CliError::Usage(format!("{source}: at least 3 samples are needed")));
    }
    let f = coefficients_from_samples(&samples, (samples.len() - 1) / 2)?;
    // drop round-off from exactly representable inputs
    let peak = f.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    Ok(f.filter(|k| f.coefficient(k).norm() > 1e-12 * peak))
}

struct Context {
    args: RunArgs,
    order: FractionalOrder<f64>,
    space: ExponentWeightPair<f64>,
    query: NormQuery<f64>,
}

impl Context {
    fn new(args: RunArgs) -> Result<Self, CliError> {
        let order = FractionalOrder::new(args.alpha)
            .map_err(|_| CliError::Usage(format!("--alpha must be positive, got {}", args.alpha)))?;
        let query = NormQuery::new(args.tol, 200)
            .map_err(|_| CliError::Usage(format!("--tol must be positive, got {}", args.tol)))?;
        let space = match &args.space {
            Some(path) => parse_space(&read(path)?, &path.display().to_string())?,
            None => ExponentWeightPair::constant(2.0)?,
        };
        Ok(Self { args, order, space, query })
    }

    fn input(&self) -> Result<(String, SpectralFunction<f64>), CliError> {
        let path = self.args.input.as_ref().ok_or_else(|| CliError::Usage("--input is required".into()))?;
        let name = path.display().to_string();
        let f = parse_function(&read(path)?, &name)?;
        Ok((name, f))
    }

    fn policy(&self) -> SupSearchPolicy<f64> {
        SupSearchPolicy::default().with_query(self.query)
    }
}

fn norm_table(ctx: &Context, f: &SpectralFunction<f64>) -> Result<Table, CliError> {
    let lux = luxemburg_norm(f, &ctx.space, &ctx.query)?;
    let orl = orlicz_norm(f, &ctx.space, &ctx.query)?;
    let ratio = if lux > 0.0 { orl / lux } else { f64::NAN };
    let mut t = Table::new(vec!["luxemburg", "orlicz", "ratio"]);
    t.push(vec![Cell::Real(lux), Cell::Real(orl), Cell::Real(ratio)]);
    Ok(t)
}

fn en_table(ctx: &Context, f: &SpectralFunction<f64>) -> Result<Table, CliError> {
    let mut t = Table::new(vec!["n", "best_approximation"]);
    for n in ctx.args.n.clone() {
        t.push(vec![Cell::Int(n as i64), Cell::Real(best_approximation(f, n, &ctx.space, &ctx.query)?)]);
    }
    Ok(t)
}

fn modulus_table(ctx: &Context, f: &SpectralFunction<f64>) -> Result<Table, CliError> {
    let mut t = Table::new(vec!["delta", "modulus", "modulus_upper"]);
    for d in ctx.args.delta.values() {
        let est = modulus_estimate(f, &ctx.order, d, &ctx.space, &ctx.policy())?;
        t.push(vec![Cell::Real(d), Cell::Real(est.value), Cell::Real(est.upper_or_value())]);
    }
    Ok(t)
}

fn kfunc_table(ctx: &Context, f: &SpectralFunction<f64>) -> Result<Table, CliError> {
    let mut t = Table::new(vec!["delta", "k_functional", "modulus", "ratio"]);
    for d in ctx.args.delta.values() {
        let k = k_functional(f, &ctx.order, d, &ctx.space, &ctx.query)?;
        let w = modulus_estimate(f, &ctx.order, d, &ctx.space, &ctx.policy())?.value;
        let ratio = if w > 0.0 { k / w } else { f64::NAN };
        t.push(vec![Cell::Real(d), Cell::Real(k), Cell::Real(w), Cell::Real(ratio)]);
    }
    Ok(t)
}

/// Verdicts for one function in one space, over the given n range and increments.
fn function_verdicts(
    label: &str,
    f: &SpectralFunction<f64>,
    space: &ExponentWeightPair<f64>,
    order: &FractionalOrder<f64>,
    ns: impl Iterator<Item = u64> + Clone,
    deltas: &[f64],
) -> Result<Vec<Verdict>, CliError> {
    let mut out = Vec::new();
    let sweep = |name: &str, vs: Vec<Verdict>| Verdict::worst(format!("{label}/{name}"), vs);
    let inverse: Vec<_> = ns.clone().map(|n| inverse_theorem_check(f, n, order, space)).collect::<Result<_, _>>()?;
    out.extend(sweep("inverse_theorem", inverse));
    if order.alpha() >= 1.0 {
        let relaxed: Vec<_> =
            ns.clone().map(|n| inverse_weighted_sum_bound(f, n, order, space)).collect::<Result<_, _>>()?;
        out.extend(sweep("inverse_weighted_sum", relaxed));
    }
    let chain: Vec<_> = ns.map(|n| jackson_chain_check(f, n, order, space)).collect::<Result<_, _>>()?;
    out.extend(sweep("jackson_chain", chain));
    out.push(k_functional_equivalence_check(f, order, deltas, space)?.renamed(format!("{label}/k_functional_equivalence")));
    let degree = f.support_radius();
    if degree > 0 {
        let psi = PsiWeights::power(order.alpha())?;
        out.push(bernstein_check(f, &psi, degree, space)?.renamed(format!("{label}/bernstein")));
    }
    Ok(out)
}

fn corpus_verdicts(order: &FractionalOrder<f64>) -> Result<Vec<Verdict>, CliError> {
    let deltas = [0.05, 0.1, 0.2, 0.5, 1.0];
    let mut functions: Vec<(String, SpectralFunction<f64>)> = CORPUS_FUNCTIONS
        .iter()
        .map(|(name, text)| Ok((name.to_string(), parse_function(text, name)?)))
        .collect::<Result<_, CliError>>()?;
    functions.push(("samples_mixed".into(), parse_function(CORPUS_SAMPLES, "samples_mixed")?));
    let mut out = Vec::new();
    for (space_name, text) in CORPUS_SPACES {
        let space = parse_space(text, space_name)?;
        for (name, f) in &functions {
            out.extend(function_verdicts(&format!("corpus/{name}/{space_name}"), f, &space, order, 1..=8, &deltas)?);
        }
    }
    Ok(out)
}

fn emit(ctx: &Context, json: String, csv: String) -> Result<(), CliError> {
    let text = match ctx.args.format {
        Format::Json => json,
        Format::Csv => csv,
    };
    match &ctx.args.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn table_command(ctx: &Context, command: &str, build: fn(&Context, &SpectralFunction<f64>) -> Result<Table, CliError>) -> Result<bool, CliError> {
    let (name, f) = ctx.input()?;
    let table = build(ctx, &f)?;
    let doc = Document::report(command)
        .with("input", Node::Cell(Cell::Text(name)))
        .with("alpha", Node::Cell(Cell::Real(ctx.args.alpha)))
        .with("rows", Node::Table(table.clone()));
    emit(ctx, doc.to_json(), table.to_csv())?;
    Ok(true)
}

fn verdicts(ctx: &Context) -> Result<Vec<Verdict>, CliError> {
    let mut all = run_suite(&SuiteConfig { seed: ctx.args.seed, ..SuiteConfig::default() });
    all.extend(corpus_verdicts(&ctx.order)?);
    if ctx.args.input.is_some() {
        let (_, f) = ctx.input()?;
        let deltas = ctx.args.delta.values();
        all.extend(function_verdicts("input", &f, &ctx.space, &ctx.order, ctx.args.n.clone(), &deltas)?);
    }
    all.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(all)
}

pub fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Norm(a) => table_command(&Context::new(a)?, "norm", norm_table),
        Command::EnTable(a) => table_command(&Context::new(a)?, "en-table", en_table),
        Command::Modulus(a) => table_command(&Context::new(a)?, "modulus", modulus_table),
        Command::Kfunc(a) => table_command(&Context::new(a)?, "kfunc", kfunc_table),
        Command::Verify(a) => {
            let ctx = Context::new(a)?;
            let all = verdicts(&ctx)?;
            let failed: Vec<&str> = all.iter().filter(|v| !v.passed).map(|v| v.name.as_str()).collect();
            emit(&ctx, verdicts_to_json(&all, ctx.args.seed) + "\n", verdicts_to_csv(&all))?;
            eprintln!("{} verdicts, {} failed", all.len(), failed.len());
            for name in &failed {
                eprintln!("FAILED {name}");
            }
            Ok(failed.is_empty())
        }
        Command::Report(a) => {
            let ctx = Context::new(a)?;
            if ctx.args.format == Format::Csv {
                return Err(CliError::Usage("report is only available as JSON".into()));
            }
            let (name, f) = ctx.input()?;
            let all = verdicts(&ctx)?;
            let passed = all.iter().filter(|v| v.passed).count();
            let doc = Document::report("report")
                .with("input", Node::Cell(Cell::Text(name)))
                .with("alpha", Node::Cell(Cell::Real(ctx.args.alpha)))
                .with("seed", Node::Cell(Cell::Int(ctx.args.seed as i64)))
                .with("norm", Node::Table(norm_table(&ctx, &f)?))
                .with("en_table", Node::Table(en_table(&ctx, &f)?))
                .with("modulus", Node::Table(modulus_table(&ctx, &f)?))
                .with("kfunc", Node::Table(kfunc_table(&ctx, &f)?))
                .with(
                    "summary",
                    Node::Object(
                        Document::default()
                            .with("total", Node::Cell(Cell::Int(all.len() as i64)))
                            .with("passed", Node::Cell(Cell::Int(passed as i64))),
                    ),
                )
                .with("verdicts", Node::Verdicts(all));
            emit(&ctx, doc.to_json(), String::new())?;
            Ok(true)
        }
    }
}
