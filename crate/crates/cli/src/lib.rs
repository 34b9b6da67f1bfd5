//! Request parsing and execution for the `wittlab` binary.

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use wittlab_core::arason::{realized_depths, Q2Table};
use wittlab_core::field_tower::{ResidueField, DEFAULT_PRECISION};
use wittlab_core::quadform::{rewrite, Rule, Summand, WittExpr};
use wittlab_core::{
    boundary_symbol, canonical_decomposition, enumerate_wq_q2, generator_certificate, wildness_index, witt_equal, Equality,
    Error, Field, GeneratorCertificate, QuadraticForm, UniformizingChoice, Q,
};

pub const SCHEMA_VERSION: u32 = 1;

pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const SYNTAX: i32 = 2;
    pub const INDISTINGUISHABLE: i32 = 3;
    pub const UNSUPPORTED: i32 = 4;
    pub const PRECISION: i32 = 5;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    /// F2((t)).
    F2Laurent,
    /// F2(x)((t)).
    F2xLaurent,
    /// GF(2^m)((t)).
    F2mLaurent(u32),
    /// GF(2^m)(x)((t)).
    F2mxLaurent(u32),
    Q2,
}

impl FieldSpec {
    pub fn build(&self, precision: Option<u32>, degree_cap: Option<u32>) -> Result<Field, Error> {
        let mut f = match self {
            FieldSpec::F2Laurent => Field::laurent(ResidueField::f2()),
            FieldSpec::F2xLaurent => Field::laurent(ResidueField::rational(1)?),
            FieldSpec::F2mLaurent(m) => Field::laurent(ResidueField::finite(*m)?),
            FieldSpec::F2mxLaurent(m) => Field::laurent(ResidueField::rational(*m)?),
            FieldSpec::Q2 => Field::dyadic(),
        };
        if let Some(p) = precision {
            if p == 0 {
                return Err(Error::Invalid("precision must be positive".into()));
            }
            f = f.with_precision(p);
        }
        if let Some(d) = degree_cap {
            f = f.with_degree_cap(d);
        }
        Ok(f)
    }

    fn from_json(v: &Value) -> Option<FieldSpec> {
        let kind = v.get("kind")?.as_str()?;
        if kind == "dyadic" {
            return Some(FieldSpec::Q2);
        }
        if kind != "laurent" {
            return None;
        }
        let r = v.get("residue")?;
        let m = r.get("m").map_or(Some(1), |m| m.as_u64().map(|m| m as u32))?;
        match (r.get("kind")?.as_str()?, m) {
            ("finite", 1) => Some(FieldSpec::F2Laurent),
            ("finite", m) => Some(FieldSpec::F2mLaurent(m)),
            ("rational", 1) => Some(FieldSpec::F2xLaurent),
            ("rational", m) => Some(FieldSpec::F2mxLaurent(m)),
            _ => None,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::F2Laurent => write!(f, "f2-laurent"),
            FieldSpec::F2xLaurent => write!(f, "f2x-laurent"),
            FieldSpec::F2mLaurent(m) => write!(f, "f2m-laurent:m={m}"),
            FieldSpec::F2mxLaurent(m) => write!(f, "f2mx-laurent:m={m}"),
            FieldSpec::Q2 => write!(f, "q2"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<FieldSpec, String> {
        let s = s.trim();
        if s.starts_with('{') {
            let v: Value = serde_json::from_str(s).map_err(|e| format!("bad field JSON: {e}"))?;
            return FieldSpec::from_json(&v).ok_or_else(|| format!("unknown field spec {s}"));
        }
        let (head, m) = match s.split_once(":m=") {
            Some((h, m)) => (h, Some(m.parse::<u32>().map_err(|_| format!("bad extension degree in {s}"))?)),
            None => (s, None),
        };
        let spec = match (head, m) {
            ("f2-laurent", None) => FieldSpec::F2Laurent,
            ("f2x-laurent", None) => FieldSpec::F2xLaurent,
            ("q2", None) => FieldSpec::Q2,
            ("f2m-laurent", Some(1)) => FieldSpec::F2Laurent,
            ("f2m-laurent", Some(m)) => FieldSpec::F2mLaurent(m),
            ("f2mx-laurent", Some(1)) => FieldSpec::F2xLaurent,
            ("f2mx-laurent", Some(m)) => FieldSpec::F2mxLaurent(m),
            _ => return Err(format!("unknown field spec {s}")),
        };
        if let FieldSpec::F2mLaurent(m) | FieldSpec::F2mxLaurent(m) = spec {
            if !(1..=16).contains(&m) {
                return Err(format!("extension degree {m} is outside 1..=16"));
            }
        }
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Depth,
    Symbol,
    Canonical,
    Equal,
    EnumerateQ2,
    Example(u8),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Request {
    pub field: FieldSpec,
    pub command: Command,
    pub forms: Vec<String>,
    pub precision: Option<u32>,
    pub degree_cap: Option<u32>,
    pub json_out: Option<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(name = "wittlab", version, about = "Depths, residue symbols and Witt classes of quadratic forms over dyadic fields")]
struct Cli {
    /// f2-laurent, f2x-laurent, q2, f2m-laurent:m=M, f2mx-laurent:m=M, or a JSON spec.
    #[arg(long, global = true, default_value = "f2-laurent")]
    field: FieldSpec,
    /// Working precision in coefficient slots.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Degree cap for rational-function coefficients.
    #[arg(long = "degree-cap", global = true)]
    degree_cap: Option<u32>,
    /// Also write the JSON result to this file.
    #[arg(long = "json-out", global = true)]
    json_out: Option<PathBuf>,
    /// Run a built-in fixture (example:1, example:2, example:3).
    #[arg(long, global = true)]
    fixture: Option<String>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Wildness index with a minimal certificate.
    Depth {
        #[arg(allow_hyphen_values = true)]
        forms: Vec<String>,
    },
    /// Depth and residue symbol.
    Symbol {
        #[arg(allow_hyphen_values = true)]
        forms: Vec<String>,
    },
    /// Canonical decomposition (perfect residue fields).
    Canonical {
        #[arg(allow_hyphen_values = true)]
        forms: Vec<String>,
    },
    /// Witt-class equality of two forms.
    Equal {
        #[arg(allow_hyphen_values = true)]
        forms: Vec<String>,
    },
    /// The 32 classes of W_q(Q2) and their addition table.
    #[command(name = "enumerate-q2")]
    EnumerateQ2,
    /// A built-in fixture by number.
    Example { n: u8 },
}

fn fixture_number(name: &str) -> Option<u8> {
    let n = name.strip_prefix("example:").or_else(|| name.strip_prefix("example")).unwrap_or(name);
    n.parse().ok().filter(|n| (1..=3).contains(n))
}

/// Parses argv (including the program name). `example:N` is accepted as a
/// single word.
pub fn parse_request<I, S>(argv: I) -> Result<Request, clap::Error>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut args: Vec<String> = Vec::new();
    for a in argv {
        let a: String = a.into();
        match a.strip_prefix("example:") {
            Some(n) if !args.is_empty() && args.last().is_some_and(|p| p != "--fixture") => {
                args.push("example".into());
                args.push(n.into());
            }
            _ => args.push(a),
        }
    }
    let cli = Cli::try_parse_from(args)?;
    let (command, forms) = match (cli.cmd, &cli.fixture) {
        (Some(Cmd::Depth { forms }), None) => (Command::Depth, forms),
        (Some(Cmd::Symbol { forms }), None) => (Command::Symbol, forms),
        (Some(Cmd::Canonical { forms }), None) => (Command::Canonical, forms),
        (Some(Cmd::Equal { forms }), None) => (Command::Equal, forms),
        (Some(Cmd::EnumerateQ2), None) => (Command::EnumerateQ2, vec![]),
        (Some(Cmd::Example { n }), None) => {
            if !(1..=3).contains(&n) {
                return Err(clap::Error::raw(clap::error::ErrorKind::InvalidValue, format!("no example {n}\n")));
            }
            (Command::Example(n), vec![])
        }
        (None, Some(name)) => match fixture_number(name) {
            Some(n) => (Command::Example(n), vec![]),
            None => {
                return Err(clap::Error::raw(clap::error::ErrorKind::InvalidValue, format!("unknown fixture {name}\n")))
            }
        },
        (Some(_), Some(_)) => {
            return Err(clap::Error::raw(
                clap::error::ErrorKind::ArgumentConflict,
                "--fixture cannot be combined with a command\n",
            ))
        }
        (None, None) => {
            return Err(clap::Error::raw(clap::error::ErrorKind::MissingSubcommand, "a command or --fixture is required\n"))
        }
    };
    if command == Command::Equal && !forms.is_empty() && forms.len() != 2 {
        return Err(clap::Error::raw(clap::error::ErrorKind::WrongNumberOfValues, "equal takes exactly two forms\n"));
    }
    Ok(Request {
        field: cli.field,
        command,
        forms,
        precision: cli.precision,
        degree_cap: cli.degree_cap,
        json_out: cli.json_out,
    })
}

/// The argv that parses back to `r`.
pub fn print_request(r: &Request) -> Vec<String> {
    let mut v = vec!["wittlab".to_string(), "--field".into(), r.field.to_string()];
    if let Some(p) = r.precision {
        v.extend(["--precision".into(), p.to_string()]);
    }
    if let Some(d) = r.degree_cap {
        v.extend(["--degree-cap".into(), d.to_string()]);
    }
    if let Some(p) = &r.json_out {
        v.extend(["--json-out".into(), p.display().to_string()]);
    }
    match r.command {
        Command::Depth => v.push("depth".into()),
        Command::Symbol => v.push("symbol".into()),
        Command::Canonical => v.push("canonical".into()),
        Command::Equal => v.push("equal".into()),
        Command::EnumerateQ2 => v.push("enumerate-q2".into()),
        Command::Example(n) => v.extend(["example".into(), n.to_string()]),
    }
    if !r.forms.is_empty() {
        v.push("--".into());
        v.extend(r.forms.iter().cloned());
    }
    v
}

/// One input item: a literal with its line number (1 for argv inputs).
#[derive(Clone, Debug)]
pub struct Item {
    pub line: usize,
    pub text: String,
}

/// Batch items read from stdin: one literal per line, `#` comments and
/// blank lines skipped. For `equal` a line holds two literals separated by `;`.
pub fn items_from_lines(src: &str) -> Vec<Item> {
    src.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| Item { line: i + 1, text: l.trim().to_string() })
        .collect()
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } => exit::SYNTAX,
        Error::Unsupported(_) | Error::Undecidable(_) => exit::UNSUPPORTED,
        Error::PrecisionExhausted(_) => exit::PRECISION,
        _ => exit::OTHER,
    }
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Syntax { .. } => "syntax",
        Error::Unsupported(_) => "unsupported",
        Error::Undecidable(_) => "undecidable",
        Error::PrecisionExhausted(_) => "precision_exhausted",
        _ => "error",
    };
    match e {
        Error::Syntax { line, col, msg } => json!({"kind": kind, "line": line, "column": col, "message": msg}),
        e => json!({"kind": kind, "message": e.to_string()}),
    }
}

fn section_name(f: &Field) -> &'static str {
    if f.is_char2() {
        "constant-coefficient embedding of the residue field"
    } else {
        "{0, 1}"
    }
}

fn header(r: &Request, f: &Field) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command_name(&r.command),
        "field": {
            "spec": r.field.to_string(),
            "name": f.name(),
            "precision": f.prec(),
            "degree_cap": f.residue_field().degree_cap(),
        },
        "section": section_name(f),
        "uniformizing_choice": UniformizingChoice::default_for(f.residue_field()).to_json(),
    })
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Depth => "depth".into(),
        Command::Symbol => "symbol".into(),
        Command::Canonical => "canonical".into(),
        Command::Equal => "equal".into(),
        Command::EnumerateQ2 => "enumerate-q2".into(),
        Command::Example(n) => format!("example:{n}"),
    }
}

fn parse_at(src: &str, line: usize, f: &Field) -> Result<QuadraticForm, Error> {
    let e = wittlab_core::parse::parse_form_at(src, line)?;
    QuadraticForm::from_expr(&e, f)
}

fn q(s: Q) -> Value {
    json!(s.to_string())
}

/// Result of one input and the exit code it contributes.
fn run_item(cmd: &Command, item: &Item, f: &Field) -> (Value, i32) {
    let out = (|| -> Result<(Value, i32), Error> {
        match cmd {
            Command::Depth => {
                let form = parse_at(&item.text, item.line, f)?;
                let w = wildness_index(&form)?;
                Ok((json!({"eps": q(w.eps), "form": form.to_string(), "wildness": w.to_json()}), exit::OK))
            }
            Command::Symbol => {
                let form = parse_at(&item.text, item.line, f)?;
                let (eps, s) = boundary_symbol(&form)?;
                Ok((
                    json!({"eps": q(eps), "form": form.to_string(), "symbol": s.to_json(), "display": s.to_string(),
                        "is_zero": s.is_zero()}),
                    exit::OK,
                ))
            }
            Command::Canonical => {
                let form = parse_at(&item.text, item.line, f)?;
                let c = canonical_decomposition(&form)?;
                Ok((json!({"form": form.to_string(), "decomposition": c.to_json(), "display": c.to_string()}), exit::OK))
            }
            Command::Equal => {
                let (a, b) = item
                    .text
                    .split_once(';')
                    .ok_or_else(|| Error::Syntax { line: item.line, col: 1, msg: "expected two forms separated by ';'".into() })?;
                let (qa, qb) = (parse_at(a.trim(), item.line, f)?, parse_at(b.trim(), item.line, f)?);
                let res = witt_equal(&qa, &qb)?;
                Ok(match res {
                    Equality::Equal => (json!({"equal": true, "status": "equal"}), exit::OK),
                    Equality::Different { depth, symbol } => (
                        json!({"equal": false, "status": "different", "difference_depth": q(depth),
                            "difference_symbol": symbol.map(|s| s.to_json())}),
                        exit::OK,
                    ),
                    Equality::Indistinguishable { residue } => (
                        json!({"equal": null, "status": "indistinguishable", "residue_symbol": residue.to_json()}),
                        exit::INDISTINGUISHABLE,
                    ),
                })
            }
            _ => unreachable!(),
        }
    })();
    match out {
        Ok((mut v, code)) => {
            v["input"] = json!(item.text);
            v["line"] = json!(item.line);
            (v, code)
        }
        Err(e) => (json!({"input": item.text, "line": item.line, "error": error_json(&e)}), exit_code(&e)),
    }
}

fn worst(codes: impl IntoIterator<Item = i32>) -> i32 {
    // Errors outrank Indistinguishable, which outranks success.
    codes.into_iter().fold(exit::OK, |acc, c| match (acc, c) {
        (a, exit::OK) => a,
        (exit::OK, c) | (exit::INDISTINGUISHABLE, c) => c,
        (a, _) => a,
    })
}

/// Runs a request; `stdin` supplies batch input when no literals were given.
pub fn run(r: &Request, stdin: Option<&str>) -> (Value, i32) {
    let f = match r.field.build(r.precision, r.degree_cap) {
        Ok(f) => f,
        Err(e) => return (json!({"schema_version": SCHEMA_VERSION, "error": error_json(&e)}), exit_code(&e)),
    };
    let mut out = header(r, &f);
    let code = match &r.command {
        Command::EnumerateQ2 => match enumerate_wq_q2(Field::dyadic().with_precision(f.prec())) {
            Ok(t) => {
                out["result"] = t.to_json();
                exit::OK
            }
            Err(e) => {
                out["error"] = error_json(&e);
                exit_code(&e)
            }
        },
        Command::Example(n) => {
            let (v, ok) = run_fixture(*n, r.precision);
            out["result"] = v;
            if ok {
                exit::OK
            } else {
                exit::OTHER
            }
        }
        cmd => {
            let items: Vec<Item> = if !r.forms.is_empty() {
                if *cmd == Command::Equal {
                    vec![Item { line: 1, text: format!("{} ; {}", r.forms[0], r.forms[1]) }]
                } else {
                    r.forms.iter().map(|t| Item { line: 1, text: t.clone() }).collect()
                }
            } else {
                items_from_lines(stdin.unwrap_or(""))
            };
            out["inputs"] = json!(items.iter().map(|i| i.text.clone()).collect::<Vec<_>>());
            let (results, codes): (Vec<Value>, Vec<i32>) = items.iter().map(|i| run_item(cmd, i, &f)).unzip();
            out["results"] = json!(results);
            worst(codes)
        }
    };
    (out, code)
}

struct Checks {
    list: Vec<Value>,
    ok: bool,
}

impl Checks {
    fn new() -> Checks {
        Checks { list: Vec::new(), ok: true }
    }

    fn add(&mut self, name: &str, criterion: u8, expected: impl Into<Value>, actual: Result<Value, Error>) {
        let expected = expected.into();
        let (actual, pass) = match actual {
            Ok(a) => {
                let p = a == expected;
                (a, p)
            }
            Err(e) => (json!({"error": e.to_string()}), false),
        };
        self.ok &= pass;
        self.list.push(json!({"name": name, "criterion": criterion, "expected": expected, "actual": actual, "pass": pass}));
    }
}

fn depth_of(f: &Field, s: &str) -> Result<Value, Error> {
    Ok(q(wildness_index(&QuadraticForm::parse(s, f)?)?.eps))
}

fn symbol_of(f: &Field, s: &str) -> Result<Value, Error> {
    Ok(json!(boundary_symbol(&QuadraticForm::parse(s, f)?)?.1.to_string()))
}

fn equal_of(f: &Field, a: &str, b: &str) -> Result<Value, Error> {
    let r = witt_equal(&QuadraticForm::parse(a, f)?, &QuadraticForm::parse(b, f)?)?;
    Ok(json!(r.as_bool()))
}

/// Hyperbolicity of [a, b] shown by the deletion rule.
fn deletes(f: &Field, a: &str, b: &str) -> Result<Value, Error> {
    let (a, b) = (wittlab_core::parse::parse_elem(a, f)?, wittlab_core::parse::parse_elem(b, f)?);
    let e = WittExpr::new(*f, vec![Summand::Bin(a, b)]);
    let r = rewrite(&e, &Rule::Delete(0))?;
    Ok(json!(r.expr.is_empty() && r.witness.verify()?))
}

pub fn run_fixture(n: u8, precision: Option<u32>) -> (Value, bool) {
    let p = precision.unwrap_or(DEFAULT_PRECISION);
    let mut c = Checks::new();
    let f2 = Field::f2_laurent().with_precision(p);
    let title;
    match n {
        1 => {
            title = "filtration of W_q(F2((t))) and a wild class over F2(x)((t))";
            c.add("depth [1+t, t^-1+t]", 1, "1/2", depth_of(&f2, "[1+t, t^-1+t]"));
            c.add("[1, t] is hyperbolic", 1, true, deletes(&f2, "1", "t"));
            c.add("[t, t] is hyperbolic", 1, true, deletes(&f2, "t", "t"));
            c.add("depth [t, t^-1]", 1, "0", depth_of(&f2, "[t, t^-1]"));
            c.add("depth [1, t^-1]", 1, "1/2", depth_of(&f2, "[1, t^-1]"));
            c.add("symbol [1, t^-1]", 1, "1(x)1", symbol_of(&f2, "[1, t^-1]"));
            c.add("[1, t^-2] equals [1, t^-1]", 1, true, equal_of(&f2, "[1, t^-2]", "[1, t^-1]"));
            c.add(
                "[1+t, t^-1+t] equals [1, t^-1] + [t, t^-1]",
                1,
                true,
                equal_of(&f2, "[1+t, t^-1+t]", "sum([1, t^-1], [t, t^-1])"),
            );
            c.add(
                "generators of [1+t, t^-1+t] at depth 1/2",
                1,
                true,
                (|| {
                    let form = QuadraticForm::parse("[1+t, t^-1+t]", &f2)?;
                    let g = generator_certificate(&form, Q::new(1, 2), true)?;
                    Ok(json!(matches!(g, GeneratorCertificate::Expression { .. })))
                })(),
            );
            match ResidueField::rational(1) {
                Ok(k) => {
                    let fx = Field::laurent(k).with_precision(p);
                    c.add("depth [1, x t^-2]", 1, "1", depth_of(&fx, "[1, x*t^-2]"));
                    c.add("symbol [1, x t^-2]", 1, "(1^x, 0)", symbol_of(&fx, "[1, x*t^-2]"));
                }
                Err(e) => c.add("F2(x)((t))", 1, true, Err(e)),
            }
        }
        2 => {
            title = "tame and wild residue classes over F2((t)) and F2(x)((t))";
            c.add("symbol [t, t^-1]", 1, "(Arf 0, Arf 1)", symbol_of(&f2, "[t, t^-1]"));
            c.add("symbol [1, 1]", 1, "(Arf 1, Arf 0)", symbol_of(&f2, "[1, 1]"));
            c.add("[t, t^-1] equals t[1, 1]", 1, true, equal_of(&f2, "[t, t^-1]", "scale(t, [1, 1])"));
            c.add("t[1, t^-1] equals [1, t^-1]", 1, true, equal_of(&f2, "scale(t, [1, t^-1])", "[1, t^-1]"));
            match ResidueField::rational(1) {
                Ok(k) => {
                    let fx = Field::laurent(k).with_precision(p);
                    c.add("symbol [1, x t^-2]", 1, "(1^x, 0)", symbol_of(&fx, "[1, x*t^-2]"));
                    c.add("symbol t[1, x t^-2]", 1, "(0, 1^x)", symbol_of(&fx, "scale(t, [1, x*t^-2])"));
                    c.add("depth t[1, x t^-2]", 1, "1", depth_of(&fx, "scale(t, [1, x*t^-2])"));
                }
                Err(e) => c.add("F2(x)((t))", 1, true, Err(e)),
            }
        }
        _ => {
            title = "three-step filtration of W_q(Q2)";
            let q2 = Field::dyadic().with_precision(p);
            let depths = (|| {
                let forms: Result<Vec<QuadraticForm>, Error> =
                    Q2Table::sample_forms().iter().map(|s| QuadraticForm::parse(s, &q2)).collect();
                let d = realized_depths(&forms?)?;
                Ok(json!(d.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
            })();
            c.add("realized depths", 2, json!(["0", "1/2", "1"]), depths);
            c.add("symbol <1>", 2, "(<1>, 0)", symbol_of(&q2, "<1>"));
            c.add("symbol 2<1>", 2, "(0, <1>)", symbol_of(&q2, "<2>"));
            c.add("depth <1, 1>", 2, "1/2", depth_of(&q2, "<1, 1>"));
            c.add("symbol <1, 1>", 2, "1(x)1", symbol_of(&q2, "<1, 1>"));
            c.add("<1, 1> equals [1, 1/2]", 2, true, equal_of(&q2, "<1, 1>", "[1, 1/2]"));
        }
    }
    (json!({"fixture": format!("example:{n}"), "title": title, "assertions": c.list, "all_pass": c.ok}), c.ok)
}
