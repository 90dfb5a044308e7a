use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::family::{family_equations, generic_marked_set, specialize};
use crate::marked::{is_marked_basis, reduce_full, BasisMode, BasisVerdict, Counterexample, MarkedSet};
use crate::monom::{
    basis_invariants, complement_count, hilbert_function, multiplicative_variables, pommaret_completion,
    stability_class, truncate_basis, MonomError, PommaretBasis, StabilityClass, StabilityWitness,
};
use crate::ring::{FreeModuleLayout, ModuleElement, ModuleTerm, Param, Rational};
use crate::syzygy::{free_resolution, invariant_bounds, minimize_resolution, verify_complex, RankTable};

use super::json::{deserialize_resolution, rank_table_json, resolution_to_value, serialize_resolution};
use super::parse::{parse_document, parse_polynomial, InputDocument, Object};
use super::{EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};

#[derive(Parser, Debug)]
#[command(name = "marked-bases", version, about = "Marked bases over quasi-stable monomial modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Input document, or `-` for standard input.
    file: PathBuf,
    /// Object to work on; defaults to the last one in the document.
    #[arg(long)]
    object: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pommaret basis and the invariants read off it.
    Pommaret(Input),
    /// Stable, quasi-stable or neither.
    Classify(Input),
    /// Pommaret basis of the truncation in degrees `>= m`.
    Truncate {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Hilbert function value in degree `s`.
    Hilbert {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Marked-basis test.
    Check {
        #[command(flatten)]
        input: Input,
        /// Only test prolongations up to this degree.
        #[arg(long, allow_hyphen_values = true)]
        up_to_degree: Option<i64>,
    },
    /// Marked reduction of a polynomial.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    /// Free resolution induced by a marked basis, as JSON.
    Resolve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        minimize: bool,
        /// Also write the resolution (the minimal one with `--minimize`)
        /// to this file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Load a saved resolution, verify it and print its ranks.
    Inspect {
        /// JSON file written by `resolve --save`.
        file: PathBuf,
    },
    /// Bounds on Betti numbers, regularity and projective dimension.
    Bounds(Input),
    /// Generic marked set and the equations of the marked family.
    Family(Input),
    /// Evaluate the generic marked set at `C_{h,t}=value,…`.
    Specialize {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn negative(stdout: String) -> Self {
        Outcome {
            code: EXIT_NEGATIVE,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(message) => Outcome::input_error(message),
    }
}

type Run = Result<Outcome, String>;

fn dispatch(command: Command) -> Run {
    match command {
        Command::Pommaret(input) => pommaret(&load(&input)?),
        Command::Classify(input) => classify(&load(&input)?),
        Command::Truncate { input, degree } => truncate(&load(&input)?, degree),
        Command::Hilbert { input, degree } => hilbert(&load(&input)?, degree),
        Command::Check { input, up_to_degree } => check(&load(&input)?, up_to_degree),
        Command::Reduce { input, target } => reduce(&load(&input)?, &target),
        Command::Resolve { input, minimize, save } => resolve(&load(&input)?, minimize, save.as_deref()),
        Command::Inspect { file } => inspect(&file),
        Command::Bounds(input) => bounds(&load(&input)?),
        Command::Family(input) => family(&load(&input)?),
        Command::Specialize { input, set } => specialize_cmd(&load(&input)?, &set),
    }
}

struct Loaded {
    name: String,
    object: Object,
    layout: Arc<FreeModuleLayout>,
}

fn read_input(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| format!("standard input: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn load(input: &Input) -> Result<Loaded, String> {
    let text = read_input(&input.file)?;
    let doc: InputDocument = parse_document(&text).map_err(|e| format!("{}:{e}", input.file.display()))?;
    let (name, object) = match &input.object {
        Some(n) => (
            n.clone(),
            doc.get(n).cloned().ok_or_else(|| format!("no object named {n}"))?,
        ),
        None => doc.last().cloned().ok_or("the document defines no objects")?,
    };
    Ok(Loaded {
        name,
        object,
        layout: doc.layout.clone(),
    })
}

enum Basis {
    Ready(PommaretBasis),
    NotQuasiStable(StabilityWitness),
}

/// The Pommaret basis behind an object: the completion of a monomial
/// module, or the heads of a marked set.
fn pommaret_of(l: &Loaded) -> Result<Basis, String> {
    match &l.object {
        Object::Marked(g) => Ok(Basis::Ready(g.basis().clone())),
        Object::Monomial { module, .. } => match pommaret_completion(module) {
            Ok(b) => Ok(Basis::Ready(b)),
            Err(MonomError::NotQuasiStable { generator, variable }) => {
                Ok(Basis::NotQuasiStable(StabilityWitness { generator, variable }))
            }
            Err(e) => Err(e.to_string()),
        },
    }
}

fn marked_of(l: &Loaded) -> Result<&MarkedSet<Rational>, String> {
    match &l.object {
        Object::Marked(g) => Ok(g),
        _ => Err(format!("{} is not a marked set", l.name)),
    }
}

fn witness_text(w: &StabilityWitness, rank: usize) -> String {
    let t = &w.generator;
    let min = t.exponent.min_var().expect("a witness is not constant");
    let base = ModuleTerm::new(t.exponent.with_exponent(min, t.exponent.get(min) - 1), t.component);
    format!(
        "witness: generator {}, variable x{}: no power x{}^s times {} lies in the module\n",
        t.display(rank),
        w.variable,
        w.variable,
        base.display(rank)
    )
}

fn with_basis(l: &Loaded, f: impl FnOnce(PommaretBasis) -> Run) -> Run {
    match pommaret_of(l)? {
        Basis::Ready(b) => f(b),
        Basis::NotQuasiStable(w) => Ok(Outcome::negative(format!(
            "not quasi-stable\n{}",
            witness_text(&w, l.layout.rank())
        ))),
    }
}

fn basis_lines(b: &PommaretBasis, out: &mut String) {
    let rank = b.layout().rank();
    for t in b.terms() {
        let vars: Vec<String> = multiplicative_variables(t).map(|i| format!("x{i}")).collect();
        writeln!(out, "  {}  multiplicative: {}", t.display(rank), vars.join(" ")).unwrap();
    }
}

fn pommaret(l: &Loaded) -> Run {
    with_basis(l, |b| {
        let inv = basis_invariants(&b);
        let mut out = format!("pommaret basis ({} terms):\n", b.len());
        basis_lines(&b, &mut out);
        writeln!(out, "regularity: {}", inv.regularity).unwrap();
        if inv.saturated {
            writeln!(out, "satiety: 0 (saturated)").unwrap();
        } else {
            writeln!(out, "satiety: {}", inv.satiety).unwrap();
        }
        writeln!(out, "projective dimension: {}", inv.projective_dimension).unwrap();
        Ok(Outcome::ok(out))
    })
}

fn class_name(c: StabilityClass) -> &'static str {
    match c {
        StabilityClass::Stable => "stable",
        StabilityClass::QuasiStable => "quasi-stable",
        StabilityClass::NotQuasiStable => "not quasi-stable",
    }
}

fn classify(l: &Loaded) -> Run {
    let module = match &l.object {
        Object::Monomial { module, .. } => module.clone(),
        Object::Marked(g) => crate::monom::MonomialModule::new(l.layout.clone(), g.basis().terms().to_vec())
            .map_err(|e| e.to_string())?,
    };
    let report = stability_class(&module);
    let mut out = format!("{}\n", class_name(report.class));
    if report.per_component.len() > 1 {
        for (k, c) in report.per_component.iter().enumerate() {
            writeln!(out, "  e{}: {}", k + 1, class_name(*c)).unwrap();
        }
    }
    match &report.witness {
        Some(w) => {
            out.push_str(&witness_text(w, l.layout.rank()));
            Ok(Outcome::negative(out))
        }
        None => Ok(Outcome::ok(out)),
    }
}

fn truncate(l: &Loaded, m: i64) -> Run {
    with_basis(l, |b| {
        let t = truncate_basis(&b, m).map_err(|e| e.to_string())?;
        let mut out = format!("pommaret basis of the truncation at degree {m} ({} terms):\n", t.len());
        basis_lines(&t, &mut out);
        Ok(Outcome::ok(out))
    })
}

fn hilbert(l: &Loaded, s: i64) -> Run {
    with_basis(l, |b| {
        Ok(Outcome::ok(format!(
            "h({s}) = {}\ncomplement({s}) = {}\n",
            hilbert_function(&b, s),
            complement_count(&b, s)
        )))
    })
}

fn counterexample_text(c: &Counterexample<Rational>) -> String {
    format!(
        "counterexample: x{}*f{} has normal form {}\n",
        c.variable,
        c.element + 1,
        c.remainder
    )
}

fn check(l: &Loaded, up_to: Option<i64>) -> Run {
    let g = marked_of(l)?;
    let mode = up_to.map_or(BasisMode::Full, BasisMode::UpToDegree);
    match is_marked_basis(g, mode).map_err(|e| e.to_string())? {
        BasisVerdict::Basis => Ok(Outcome::ok("marked basis: yes\n".into())),
        BasisVerdict::NotBasis(c) => Ok(Outcome::negative(format!("marked basis: no\n{}", counterexample_text(&c)))),
        BasisVerdict::Inconclusive { checked, required } => Ok(Outcome::ok(format!(
            "marked basis: inconclusive\nprolongations up to degree {checked} reduce to zero; degree {required} is needed to decide\n"
        ))),
    }
}

fn reduce(l: &Loaded, target: &str) -> Run {
    let g = marked_of(l)?;
    let h = parse_polynomial(target, &l.layout).map_err(|e| format!("--target: {e}"))?;
    let rep = reduce_full(&h, g).map_err(|e| e.to_string())?;
    let ring = Arc::new(FreeModuleLayout::ring(l.layout.nvars()));
    let mut out = format!("normal form: {}\n", rep.remainder);
    if rep.summands.is_empty() {
        out.push_str("quotients: none\n");
    } else {
        out.push_str("quotients:\n");
    }
    for (k, p) in rep.coefficient_polys(g.len()).into_iter().enumerate() {
        if p.is_empty() {
            continue;
        }
        let q = ModuleElement::from_terms(ring.clone(), p.into_iter().map(|(e, c)| (ModuleTerm::new(e, 0), c)))
            .map_err(|e| e.to_string())?;
        writeln!(out, "  f{}: {}", k + 1, q).unwrap();
    }
    Ok(Outcome::ok(out))
}

/// A marked set to resolve: the object itself, or the monomial basis of a
/// monomial module.
fn resolvable(l: &Loaded) -> Result<Result<MarkedSet<Rational>, Outcome>, String> {
    match &l.object {
        Object::Marked(g) => Ok(Ok(g.clone())),
        Object::Monomial { .. } => match pommaret_of(l)? {
            Basis::Ready(b) => Ok(Ok(MarkedSet::monomial(b))),
            Basis::NotQuasiStable(w) => Ok(Err(Outcome::negative(format!(
                "not quasi-stable\n{}",
                witness_text(&w, l.layout.rank())
            )))),
        },
    }
}

fn resolve(l: &Loaded, minimize: bool, save: Option<&Path>) -> Run {
    let g = match resolvable(l)? {
        Ok(g) => g,
        Err(o) => return Ok(o),
    };
    if let BasisVerdict::NotBasis(c) = is_marked_basis(&g, BasisMode::Full).map_err(|e| e.to_string())? {
        return Ok(Outcome::negative(format!("marked basis: no\n{}", counterexample_text(&c))));
    }
    let r = free_resolution(&g).map_err(|e| e.to_string())?;
    let mut value = json!({ "resolution": resolution_to_value(&r) });
    let mut saved = r.clone();
    if minimize {
        let m = minimize_resolution(&r).map_err(|e| e.to_string())?;
        value["minimal"] = resolution_to_value(&m);
        saved = m;
    }
    if let Some(path) = save {
        std::fs::write(path, serialize_resolution(&saved)).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
    out.push('\n');
    Ok(Outcome::ok(out))
}

fn inspect(path: &Path) -> Run {
    let text = read_input(path)?;
    let r = deserialize_resolution(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let value = json!({
        "length": r.length(),
        "ranks": rank_table_json(&r.ranks()),
        "complex": verify_complex(&r),
    });
    let out = serde_json::to_string_pretty(&value).expect("values serialize") + "\n";
    if verify_complex(&r) {
        Ok(Outcome::ok(out))
    } else {
        Ok(Outcome::negative(out))
    }
}

fn free_module_text(row: &std::collections::BTreeMap<i64, usize>) -> String {
    let parts: Vec<String> = row
        .iter()
        .map(|(j, r)| if *r == 1 { format!("S(-{j})") } else { format!("S(-{j})^{r}") })
        .collect();
    parts.join(" + ")
}

fn table_lines(t: &RankTable, out: &mut String) {
    for (i, row) in t {
        writeln!(out, "  F{i}: {}", free_module_text(row)).unwrap();
    }
}

fn bounds(l: &Loaded) -> Run {
    with_basis(l, |b| {
        let report = invariant_bounds(&b).map_err(|e| e.to_string())?;
        let mut out = String::from("betti number bounds:\n");
        table_lines(&report.betti_bound_table, &mut out);
        writeln!(out, "regularity bound: {}", report.regularity_bound).unwrap();
        writeln!(out, "projective dimension bound: {}", report.pdim_bound).unwrap();
        Ok(Outcome::ok(out))
    })
}

fn family(l: &Loaded) -> Run {
    with_basis(l, |b| {
        let g = generic_marked_set(&b);
        let r = family_equations(&g).map_err(|e| e.to_string())?;
        let rank = b.layout().rank();
        let mut out = format!("parameters ({}):\n", g.parameters().len());
        for s in g.parameters() {
            writeln!(out, "  {}: {} -> {}", s.param, s.head.display(rank), s.tail.display(rank)).unwrap();
        }
        out.push_str("generic marked set:\n");
        for e in g.set().elements() {
            writeln!(out, "  {}", e.display()).unwrap();
        }
        writeln!(out, "equations ({}):", r.generators.len()).unwrap();
        for p in &r.generators {
            writeln!(out, "  {p}").unwrap();
        }
        Ok(Outcome::ok(out))
    })
}

/// Splits `C_{0,0}=1,C_{1,0}=-1/2` on commas outside braces.
fn parse_assignment(text: &str) -> Result<HashMap<Param, Rational>, String> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    let mut out = HashMap::new();
    for part in parts.into_iter().map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| format!("expected name=value, found {part:?}"))?;
        let param = parse_param(name.trim()).ok_or_else(|| format!("expected a parameter C_{{h,t}}, found {name:?}"))?;
        let value: Rational = value
            .trim()
            .parse()
            .map_err(|_| format!("expected a rational value for {name}, found {value:?}"))?;
        out.insert(param, value);
    }
    Ok(out)
}

fn parse_param(name: &str) -> Option<Param> {
    let inner = name.strip_prefix("C_{")?.strip_suffix('}')?;
    let (h, t) = inner.split_once(',')?;
    Some(Param::new(h.trim().parse().ok()?, t.trim().parse().ok()?))
}

fn specialize_cmd(l: &Loaded, set: &str) -> Run {
    let assignment = parse_assignment(set).map_err(|e| format!("--set: {e}"))?;
    with_basis(l, |b| {
        let g = generic_marked_set(&b);
        if let Some(p) = assignment.keys().find(|p| !g.parameters().iter().any(|s| s.param == **p)) {
            return Err(format!("--set: {p} is not a parameter of this family"));
        }
        let r = family_equations(&g).map_err(|e| e.to_string())?;
        let s = specialize(&g, &assignment, Some(&r)).map_err(|e| format!("--set: {e}"))?;
        let mut out = String::from("marked set:\n");
        for e in s.set.elements() {
            writeln!(out, "  {}", e.display()).unwrap();
        }
        let yes = |v: bool| if v { "yes" } else { "no" };
        writeln!(out, "equations vanish: {}", yes(s.equations_vanish == Some(true))).unwrap();
        match is_marked_basis(&s.set, BasisMode::Full).map_err(|e| e.to_string())? {
            BasisVerdict::NotBasis(c) => {
                writeln!(out, "marked basis: no").unwrap();
                out.push_str(&counterexample_text(&c));
                Ok(Outcome::negative(out))
            }
            _ => {
                writeln!(out, "marked basis: yes").unwrap();
                Ok(Outcome::ok(out))
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignments_split_outside_braces() {
        let a = parse_assignment("C_{0,0}=1, C_{1,0}=-1/2").unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a[&Param::new(1, 0)], crate::ring::rational(-1, 2));
        assert!(parse_assignment("C_{0,0}").is_err());
        assert!(parse_assignment("a=1").is_err());
        assert!(parse_assignment("C_{0,0}=x").is_err());
        assert!(parse_assignment("").unwrap().is_empty());
    }
}
