//! Command-line interface.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use lockit_core::normal::{enumerate_partial_normals, maximal_cosets, normal_closure, PartialNormal};
use lockit_core::omega::{
    compute_omega_by_maps, f_conjugates, fusion_morphisms, is_fully_normalized, is_strongly_closed, o_p,
    single_step_morphisms,
};
use lockit_core::products::check_products;
use lockit_core::quotient::{check_quotient, quotient};
use lockit_core::suite::{describe, enumeration_checks, run_catalog, run_suite, Suite};
use lockit_core::{compute_omega, validate_locality, ElemSet, Report};

use crate::error::CliError;
use crate::output::{ids, Document, Input, Section};
use crate::spec::parse_spec;
use crate::workspace::{limits_from_env, parse_elements, LoadedLocality, Workspace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "lockit", version, about = "Partial groups and localities: build, validate, verify")]
struct Cli {
    /// Emit the report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build every locality of a spec file and check the locality conditions.
    Validate {
        file: String,
        /// Fail when the object family had to be closed.
        #[arg(long)]
        strict: bool,
    },
    /// The Ω poset, dimensions and O_p.
    Omega {
        file: String,
        #[arg(long)]
        locality: Option<String>,
    },
    /// Fusion classes and automizers of subgroups of S.
    Fusion {
        file: String,
        #[arg(long)]
        locality: Option<String>,
    },
    /// All partial normal subgroups.
    Normals {
        file: String,
        #[arg(long)]
        locality: Option<String>,
    },
    /// The quotient by a partial normal subgroup.
    Quotient {
        file: String,
        #[arg(long)]
        locality: Option<String>,
        /// A declared normal name, or comma-separated elements whose normal
        /// closure is taken.
        #[arg(long)]
        normal: String,
        #[arg(long, default_value_t = 6)]
        max_word_len: usize,
    },
    /// Products of partial normal subgroups.
    Products {
        file: String,
        #[arg(long)]
        locality: Option<String>,
        /// Declared normal names; all partial normal subgroups by default.
        #[arg(long, value_delimiter = ',')]
        normals: Vec<String>,
    },
    /// Run a verification suite.
    Check {
        file: String,
        #[arg(long)]
        locality: Option<String>,
        #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_word_len: usize,
    },
    /// Build a catalog example and run its full suite.
    Catalog {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(lockit_core::catalog::NAMES))]
        name: String,
        #[arg(long, default_value_t = 6)]
        max_word_len: usize,
    },
}

fn load(path: &str) -> Result<(Workspace, Input), CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Usage(format!("{path}: not UTF-8")))?;
    let doc = parse_spec(&text)?;
    let ws = Workspace::load(doc, &limits_from_env()?)?;
    Ok((ws, Input::new(path, &bytes)))
}

fn one<'a>(ws: &'a Workspace, name: Option<&str>) -> Result<&'a LoadedLocality, CliError> {
    match name {
        Some(n) => ws.locality(n),
        None if ws.localities.len() == 1 => Ok(&ws.localities[0]),
        None => Err(CliError::Usage("several localities; pick one with --locality".into())),
    }
}

fn base_section(ll: &LoadedLocality) -> Section {
    let l = &ll.locality;
    let omega = compute_omega(l);
    let mut s = Section::new(&ll.name);
    for (k, v) in describe(l, &omega) {
        s.fact(k, v);
    }
    s
}

fn validate_cmd(ws: &Workspace, strict: bool) -> Vec<Section> {
    let mut out = Vec::new();
    for ll in &ws.localities {
        let l = &ll.locality;
        let mut s = base_section(ll);
        s.fact("delta-mode", l.delta_mode().name());
        s.fact("objects", l.objects().iter().map(|&p| ids(l.lattice().set(p))).collect::<Vec<_>>());
        if l.auto_closed() {
            s.notes
                .push("the given objects were closed under S-conjugation and overgroups".into());
        }
        let mut r = validate_locality(l);
        if strict {
            r.case("objects-closed-as-given", !l.auto_closed(), String::new);
        }
        s.add_report(&r);
        out.push(s);
    }
    out
}

fn omega_cmd(ll: &LoadedLocality) -> Section {
    let l = &ll.locality;
    let omega = compute_omega(l);
    let lat = l.lattice();
    let mut s = base_section(ll);
    let members: Vec<serde_json::Value> = omega
        .members
        .iter()
        .map(|&m| {
            serde_json::json!({
                "members": ids(lat.set(m)),
                "dim": omega.dim_of[&m],
                "witness": omega.witness[&m],
            })
        })
        .collect();
    s.fact("omega", members);
    s.fact("o_p", ids(lat.set(o_p(l))));
    let mut r = Report::new();
    r.case("intersection-closed", omega.intersection_closed(l), String::new);
    r.case("routes-agree", compute_omega_by_maps(l).members == omega.members, String::new);
    s.add_report(&r);
    s
}

fn fusion_cmd(ll: &LoadedLocality) -> Section {
    let l = &ll.locality;
    let omega = compute_omega(l);
    let lat = l.lattice();
    let mut s = base_section(ll);
    let mut r = Report::new();
    let mut classes = std::collections::BTreeSet::new();
    let subs: Vec<serde_json::Value> = lat
        .ids()
        .map(|x| {
            let class = f_conjugates(l, x);
            classes.insert(class[0]);
            let aut = fusion_morphisms(l, x, x);
            if l.is_object(x) {
                r.case("automizer-single-step", aut == single_step_morphisms(l, x, x), || {
                    format!("{:?}", ids(lat.set(x)))
                });
            }
            serde_json::json!({
                "members": ids(lat.set(x)),
                "object": l.is_object(x),
                "in_omega": omega.contains(x),
                "class": ids(lat.set(class[0])),
                "class_size": class.len(),
                "automizer_order": aut.len(),
                "fully_normalized": is_fully_normalized(l, &omega, x),
                "strongly_closed": is_strongly_closed(l, x),
            })
        })
        .collect();
    s.fact("subgroups", subs);
    s.fact("classes", classes.len());
    s.add_report(&r);
    s
}

fn normals_cmd(ll: &LoadedLocality) -> Section {
    let l = &ll.locality;
    let omega = compute_omega(l);
    let en = enumerate_partial_normals(l);
    let mut s = base_section(ll);
    let mut r = enumeration_checks(l, &en);
    let list: Vec<serde_json::Value> = en
        .normals
        .iter()
        .map(|n| match PartialNormal::new(l, &omega, n.clone()) {
            Ok(pn) => {
                let blocks = maximal_cosets(l, &pn).map(|cp| cp.blocks.len()).ok();
                r.case("maximal-cosets", blocks.is_some(), || format!("{:?}", ids(n)));
                serde_json::json!({
                    "members": ids(n),
                    "order": n.len(),
                    "t": ids(l.lattice().set(pn.t)),
                    "up_maximal": pn.up_max.len(),
                    "maximal_cosets": blocks,
                })
            }
            Err(e) => {
                r.fail("partial-normal", format!("{e}"));
                serde_json::json!({ "members": ids(n) })
            }
        })
        .collect();
    for (name, n) in &ll.normals {
        r.case("declared-normal-enumerated", en.normals.contains(n), || name.clone());
    }
    s.fact("count", en.normals.len());
    s.fact("normals", list);
    s.add_report(&r);
    s
}

fn normal_arg(ll: &LoadedLocality, arg: &str) -> Result<ElemSet, CliError> {
    if let Some(n) = ll.normals.get(arg) {
        return Ok(n.clone());
    }
    if !arg.trim_start().starts_with('(') {
        return Err(CliError::Usage(format!("`{arg}` is neither a declared normal nor a list of elements")));
    }
    let elems = parse_elements(&ll.locality, arg)?;
    Ok(normal_closure(&ll.locality, elems))
}

fn quotient_cmd(ll: &LoadedLocality, normal: &str, max_len: usize) -> Result<Section, CliError> {
    let l = &ll.locality;
    let n = normal_arg(ll, normal)?;
    let omega = compute_omega(l);
    let pn = PartialNormal::new(l, &omega, n)?;
    let (q, proj) = quotient(l, &pn)?;
    let mut s = base_section(ll);
    s.fact("normal", ids(&pn.members));
    s.fact("t", ids(l.lattice().set(pn.t)));
    s.fact("quotient-carrier", q.size());
    s.fact("quotient-s-order", q.s().len());
    s.fact("quotient-objects", q.objects().len());
    s.fact("quotient-is-group", q.is_group());
    s.fact("projection", &proj.map);
    s.add_report(&check_quotient(l, &pn, max_len));
    Ok(s)
}

fn products_cmd(ll: &LoadedLocality, names: &[String]) -> Result<Section, CliError> {
    let l = &ll.locality;
    let normals: Vec<ElemSet> = if names.is_empty() {
        enumerate_partial_normals(l).normals
    } else {
        names
            .iter()
            .map(|n| {
                ll.normals
                    .get(n)
                    .cloned()
                    .ok_or_else(|| CliError::Usage(format!("no normal named `{n}`")))
            })
            .collect::<Result<_, _>>()?
    };
    let mut s = base_section(ll);
    s.fact("factors", normals.iter().map(ids).collect::<Vec<_>>());
    s.add_report(&check_products(l, &normals));
    Ok(s)
}

fn check_cmd(ws: &Workspace, name: Option<&str>, suite: Suite, max_len: usize) -> Result<Vec<Section>, CliError> {
    let mut out = Vec::new();
    for ll in ws.select(name)? {
        let mut s = base_section(ll);
        s.fact("suite", suite.name());
        s.fact("max-word-len", max_len);
        s.add_report(&run_suite(&ll.locality, suite, max_len));
        out.push(s);
    }
    Ok(out)
}

fn catalog_cmd(name: &str, max_len: usize) -> Result<Section, CliError> {
    let (l, r) = run_catalog(name, max_len)?;
    let mut s = Section::new(name);
    match &l {
        Some(l) => {
            for (k, v) in describe(l, &compute_omega(l)) {
                s.fact(k, v);
            }
            if let Some(c) = l.carrier_in_group() {
                s.fact("carrier-in-group", ids(&c));
            }
        }
        None => s.fact("carrier", 3),
    }
    s.add_report(&r);
    Ok(s)
}

fn dispatch(cli: &Cli) -> Result<Document, CliError> {
    let (command, input, sections) = match &cli.command {
        Command::Validate { file, strict } => {
            let (ws, input) = load(file)?;
            ("validate", input, validate_cmd(&ws, *strict))
        }
        Command::Omega { file, locality } => {
            let (ws, input) = load(file)?;
            let secs = ws.select(locality.as_deref())?.into_iter().map(omega_cmd).collect();
            ("omega", input, secs)
        }
        Command::Fusion { file, locality } => {
            let (ws, input) = load(file)?;
            let secs = ws.select(locality.as_deref())?.into_iter().map(fusion_cmd).collect();
            ("fusion", input, secs)
        }
        Command::Normals { file, locality } => {
            let (ws, input) = load(file)?;
            let secs = ws.select(locality.as_deref())?.into_iter().map(normals_cmd).collect();
            ("normals", input, secs)
        }
        Command::Quotient {
            file,
            locality,
            normal,
            max_word_len,
        } => {
            let (ws, input) = load(file)?;
            let s = quotient_cmd(one(&ws, locality.as_deref())?, normal, *max_word_len)?;
            ("quotient", input, vec![s])
        }
        Command::Products { file, locality, normals } => {
            let (ws, input) = load(file)?;
            let s = products_cmd(one(&ws, locality.as_deref())?, normals)?;
            ("products", input, vec![s])
        }
        Command::Check {
            file,
            locality,
            suite,
            max_word_len,
        } => {
            let (ws, input) = load(file)?;
            let suite = Suite::parse(suite)?;
            ("check", input, check_cmd(&ws, locality.as_deref(), suite, *max_word_len)?)
        }
        Command::Catalog { name, max_word_len } => {
            let input = Input::new(format!("catalog:{name}"), format!("catalog:{name}").as_bytes());
            ("catalog", input, vec![catalog_cmd(name, *max_word_len)?])
        }
    };
    Ok(Document::new(command, input, sections))
}

/// Runs the CLI on `args` (including the program name); returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(doc) => {
            let text = if cli.json { doc.to_json() } else { doc.to_text() };
            let _ = out.write_all(text.as_bytes());
            if doc.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
