//! `semifield`: batch front end for the semifield-core library.
//!
//! Parameters are `key=value` words after the verb, for example
//! `semifield census q=2 m=3 j=1`. Field elements use `w^k` notation or
//! coordinate tuples with the constant term first.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use semifield_core::classify::{
    census_in, cross_generator_verdict, isotopy_verdict, parametrize_s2_in, parametrize_s_in,
};
use semifield_core::codes::{build_rank_code, expand_rank_code, list_constacyclic};
use semifield_core::export::{self, parse_element};
use semifield_core::fields::DEFAULT_SIZE_CAP;
use semifield_core::{acceptance, Elem, Error, ExtensionTower, GaloisGenerator, PetitAlgebra};

#[derive(Parser, Debug)]
#[command(
    name = "semifield",
    version,
    about = "Petit algebras, semifields and their codes over finite fields"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Largest field or enumeration size the library will touch.
    #[arg(long, env = "SEMIFIELD_SIZE_CAP", default_value_t = DEFAULT_SIZE_CAP, global = true)]
    cap: u64,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// The tower F_q ⊂ F_{q^n}: q, n (default 1).
    Field { params: Vec<String> },
    /// K[t;σ]/K[t;σ](t^m - a) with nuclei and division checks: q, n, m, j (default 1), a.
    Algebra { params: Vec<String> },
    /// Isomorphism and isotopy verdicts: q, n, m, j1, a1, j2 (default j1), a2.
    Classify { params: Vec<String> },
    /// Isomorphism classes of (F_{q^m}/F_q, σ_j, a): q, m, j (default 1).
    Census { params: Vec<String> },
    /// Parameter sets of the classes: q, m, j (default 1).
    Parametrize { params: Vec<String> },
    /// Rank code of right multiplications and its expansion: q, m, n (default m), j (default 1), a.
    Mrd { params: Vec<String> },
    /// Codes from the monic right divisors of t^m - a: q, n, m, j (default 1), a.
    Constacyclic { params: Vec<String> },
    /// Runs the acceptance checks; `criterion=N` runs one.
    Verify { params: Vec<String> },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeCapExceeded { .. } | Error::EnumerationCapExceeded { .. } => 2,
            Error::Inconsistent(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

struct Params {
    verb: &'static str,
    values: BTreeMap<String, String>,
}

impl Params {
    fn parse(verb: &'static str, words: &[String], allowed: &[&str]) -> Result<Self, Failure> {
        let mut values = BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| invalid(format!("expected key=value, got `{w}`")))?;
            if !allowed.contains(&k) {
                return Err(invalid(format!(
                    "`{verb}` takes {}; unknown key `{k}`",
                    allowed.join(", ")
                )));
            }
            if values.insert(k.to_string(), v.to_string()).is_some() {
                return Err(invalid(format!("`{k}` given twice")));
            }
        }
        Ok(Params { verb, values })
    }

    fn raw(&self, key: &str) -> Result<&str, Failure> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| invalid(format!("`{}` needs {key}=…", self.verb)))
    }

    fn num<T: std::str::FromStr>(&self, key: &str) -> Result<T, Failure> {
        let v = self.raw(key)?;
        v.parse()
            .map_err(|_| invalid(format!("{key}={v} is not a valid number")))
    }

    fn num_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, Failure> {
        if self.values.contains_key(key) {
            self.num(key)
        } else {
            Ok(default)
        }
    }

    fn elem(&self, tower: &ExtensionTower, key: &str) -> Result<Elem, Failure> {
        Ok(parse_element(tower.top(), self.raw(key)?)?)
    }
}

fn tower(q: u64, n: u32, cap: u64) -> Result<Arc<ExtensionTower>, Failure> {
    Ok(Arc::new(ExtensionTower::with_cap(q, n, cap)?))
}

fn cyclic(t: &Arc<ExtensionTower>, j: u32, m: usize, a: Elem) -> Result<PetitAlgebra, Failure> {
    if m == 0 {
        return Err(invalid("m must be positive"));
    }
    let gen = GaloisGenerator::new(t, j)?;
    Ok(PetitAlgebra::cyclic(t.clone(), gen, m, a)?)
}

/// Document and exit status for one invocation.
fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    let cap = cli.cap;
    let doc = match &cli.verb {
        Verb::Field { params } => {
            let p = Params::parse("field", params, &["q", "n"])?;
            let t = tower(p.num("q")?, p.num_or("n", 1)?, cap)?;
            export::document("field", export::field_doc(&t))
        }
        Verb::Algebra { params } => {
            let p = Params::parse("algebra", params, &["q", "n", "m", "j", "a"])?;
            let t = tower(p.num("q")?, p.num("n")?, cap)?;
            let alg = cyclic(&t, p.num_or("j", 1)?, p.num("m")?, p.elem(&t, "a")?)?;
            let nuclei = alg.nuclei();
            let division = alg.is_division()?;
            let prechecks = alg.division_prechecks()?;
            export::document(
                "algebra",
                export::algebra_doc(&alg, Some(&nuclei), Some(division), Some(&prechecks)),
            )
        }
        Verb::Classify { params } => {
            let p = Params::parse("classify", params, &["q", "n", "m", "j1", "a1", "j2", "a2"])?;
            let t = tower(p.num("q")?, p.num("n")?, cap)?;
            let m = p.num("m")?;
            let j1 = p.num("j1")?;
            let a = cyclic(&t, j1, m, p.elem(&t, "a1")?)?;
            let b = cyclic(&t, p.num_or("j2", j1)?, m, p.elem(&t, "a2")?)?;
            let verdict = cross_generator_verdict(&a, &b)?;
            let mut body = export::verdict_doc(t.top(), &verdict);
            body["isotopy"] = export::isotopy_doc(&isotopy_verdict(&a, &b)?);
            export::document("classification", body)
        }
        Verb::Census { params } => {
            let p = Params::parse("census", params, &["q", "m", "j"])?;
            let m: usize = p.num("m")?;
            let t = tower(p.num("q")?, m as u32, cap)?;
            let c = census_in(&t, m, p.num_or("j", 1)?)?;
            export::document("census", export::census_doc(t.top(), &c))
        }
        Verb::Parametrize { params } => {
            let p = Params::parse("parametrize", params, &["q", "m", "j"])?;
            let m: usize = p.num("m")?;
            let t = tower(p.num("q")?, m as u32, cap)?;
            let k = t.top();
            let sets = if m == 2 {
                let (s2, s2p) = parametrize_s2_in(&t)?;
                vec![export::param_doc(k, &s2), export::param_doc(k, &s2p)]
            } else {
                vec![export::param_doc(
                    k,
                    &parametrize_s_in(&t, m, p.num_or("j", 1)?)?,
                )]
            };
            export::document("parametrization", json!({ "sets": sets }))
        }
        Verb::Mrd { params } => {
            let p = Params::parse("mrd", params, &["q", "m", "n", "j", "a"])?;
            let m: usize = p.num("m")?;
            let t = tower(p.num("q")?, p.num_or("n", m as u32)?, cap)?;
            let alg = cyclic(&t, p.num_or("j", 1)?, m, p.elem(&t, "a")?)?;
            let mut codes = Vec::new();
            for code in [build_rank_code(&alg)?, expand_rank_code(&alg)?] {
                let report = code.mrd_check()?;
                let words = code.codewords()?;
                codes.push(export::rank_code_doc(&code, &report, Some(&words)));
            }
            let expanded = codes.pop().expect("two codes");
            let code = codes.pop().expect("two codes");
            export::document(
                "rank-code",
                json!({
                    "algebra": export::algebra_doc(&alg, None, Some(true), None),
                    "code": code,
                    "expanded": expanded,
                }),
            )
        }
        Verb::Constacyclic { params } => {
            let p = Params::parse("constacyclic", params, &["q", "n", "m", "j", "a"])?;
            let t = tower(p.num("q")?, p.num("n")?, cap)?;
            let gen = GaloisGenerator::new(&t, p.num_or("j", 1)?)?;
            let m: usize = p.num("m")?;
            if m < 2 {
                return Err(invalid("m must be at least 2"));
            }
            let a = p.elem(&t, "a")?;
            let codes = list_constacyclic(t.clone(), gen, m, a)?;
            export::document(
                "constacyclic",
                json!({
                    "q": t.q(),
                    "n": t.degree(),
                    "j": gen.exponent(),
                    "m": m,
                    "a": t.top().display(a),
                    "divisors": codes.iter().map(|c| export::poly_text(t.top(), &c.g)).collect::<Vec<_>>(),
                    "codes": codes.iter().map(export::consta_doc).collect::<Vec<_>>(),
                }),
            )
        }
        Verb::Verify { params } => {
            let p = Params::parse("verify", params, &["criterion"])?;
            let reports = if p.values.contains_key("criterion") {
                let id: u8 = p.num("criterion")?;
                vec![acceptance::run(id).ok_or_else(|| invalid(format!("no criterion {id}")))?]
            } else {
                acceptance::run_all()
            };
            let status = if reports.iter().all(|r| r.passed) {
                0
            } else {
                3
            };
            if cli.format == Format::Text {
                let lines: Vec<Value> = reports.iter().map(|r| json!(r.line())).collect();
                return Ok((json!({ "lines": lines }), status));
            }
            return Ok((
                export::document("verification", export::verify_doc(&reports)),
                status,
            ));
        }
    };
    Ok((doc, 0))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_matrix(v: &Value) -> bool {
    matches!(v, Value::Array(rows) if !rows.is_empty()
        && rows.iter().all(|r| matches!(r, Value::Array(xs) if xs.iter().all(is_scalar))))
}

/// Indented `key: value` listing; matrices print as aligned rows.
fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x)));
                } else if matches!(x, Value::Array(xs) if xs.iter().all(is_scalar)) {
                    let xs = x.as_array().expect("array");
                    let items: Vec<String> = xs.iter().map(scalar_text).collect();
                    out.push_str(&format!("{pad}{k}: [{}]\n", items.join(", ")));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    text(x, indent + 2, out);
                }
            }
        }
        Value::Array(xs) if is_matrix(v) => {
            let rows: Vec<Vec<String>> = xs
                .iter()
                .map(|r| r.as_array().expect("row").iter().map(scalar_text).collect())
                .collect();
            let width = rows
                .iter()
                .flatten()
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(1);
            for r in rows {
                let cells: Vec<String> = r.iter().map(|s| format!("{s:>width$}")).collect();
                out.push_str(&format!("{pad}{}\n", cells.join(" ")));
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                } else {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    text(x, indent + 2, out);
                }
            }
        }
        scalar => out.push_str(&format!("{pad}{}\n", scalar_text(scalar))),
    }
}

fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            if let Some(lines) = doc.get("lines").and_then(Value::as_array) {
                return lines
                    .iter()
                    .map(|l| format!("{}\n", scalar_text(l)))
                    .collect();
            }
            let mut out = String::new();
            text(doc, 0, &mut out);
            out
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok((doc, status)) => {
            let body = render(&doc, cli.format);
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::from(status)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(ws: &[&str]) -> Vec<String> {
        ws.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn params() {
        let p = Params::parse("census", &words(&["q=4", "m=3"]), &["q", "m", "j"])
            .ok()
            .unwrap();
        assert_eq!(p.num::<u64>("q").ok(), Some(4));
        assert_eq!(p.num_or::<u32>("j", 1).ok(), Some(1));
        assert!(p.raw("x").is_err());
        for bad in [&["q"][..], &["z=1"], &["q=1", "q=2"]] {
            let e = Params::parse("census", &words(bad), &["q", "m", "j"])
                .err()
                .unwrap();
            assert_eq!(e.code, 1);
        }
    }

    #[test]
    fn error_codes() {
        assert_eq!(
            Failure::from(Error::SizeCapExceeded { needed: 9, cap: 1 }).code,
            2
        );
        assert_eq!(Failure::from(Error::Inconsistent("x".into())).code, 3);
        assert_eq!(Failure::from(Error::NotPrimePower(6)).code, 1);
    }

    #[test]
    fn text_layout() {
        let doc = json!({"m": [["1", "w"], ["w^2", "0"]], "n": 2, "xs": ["a", "b"]});
        assert_eq!(
            render(&doc, Format::Text),
            "m:\n    1   w\n  w^2   0\nn: 2\nxs: [a, b]\n"
        );
    }
}
