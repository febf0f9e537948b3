//! Resolving a parsed document into groups and localities.

use std::collections::BTreeMap;
use std::sync::Arc;

use lockit_core::normal::normal_closure;
use lockit_core::{build_locality, DeltaSpec, ElemSet, FiniteGroup, Limits, Locality, Perm, Subgroup};

use crate::error::CliError;
use crate::spec::{Cycles, DeltaDecl, LocalityDecl, SpecDocument, SylowDecl};

pub const MAX_ORDER_VAR: &str = "LOCKIT_MAX_ORDER";

/// Limits with the group-order cap taken from `LOCKIT_MAX_ORDER` if set.
pub fn limits_from_env() -> Result<Limits, CliError> {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var(MAX_ORDER_VAR) {
        limits.max_group_order = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_ORDER_VAR} must be a positive integer, got `{v}`")))?;
    }
    Ok(limits)
}

pub struct LoadedLocality {
    pub name: String,
    pub locality: Arc<Locality>,
    pub normals: BTreeMap<String, ElemSet>,
}

pub struct Workspace {
    pub doc: SpecDocument,
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub localities: Vec<LoadedLocality>,
}

fn to_perm(degree: usize, c: &Cycles) -> Result<Perm, lockit_core::Error> {
    Perm::from_cycles(degree, &c.0)
}

fn group_element(g: &FiniteGroup, c: &Cycles) -> Option<usize> {
    let perm = to_perm(g.degree()?, c).ok()?;
    g.find_perm(&perm)
}

fn load_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Load {
        line,
        message: message.into(),
    }
}

fn subgroup_of(g: &FiniteGroup, gens: &[Cycles], line: usize) -> Result<Subgroup, CliError> {
    let mut elems = Vec::new();
    for c in gens {
        elems.push(group_element(g, c).ok_or_else(|| load_error(line, format!("{c} is not in the group")))?);
    }
    Ok(g.subgroup_closure(elems))
}

fn load_locality(g: &Arc<FiniteGroup>, decl: &LocalityDecl, limits: &Limits) -> Result<LoadedLocality, CliError> {
    let line = decl.line.0;
    let s = match &decl.sylow {
        SylowDecl::Auto => g
            .sylow_p(decl.prime, limits)
            .map_err(|e| load_error(line, e.to_string()))?
            .into_iter()
            .next()
            .ok_or_else(|| load_error(line, "no Sylow subgroup"))?,
        SylowDecl::Gens(gens) => subgroup_of(g, gens, line)?,
    };
    let subs = |v: &[Vec<Cycles>]| -> Result<Vec<ElemSet>, CliError> {
        v.iter().map(|gens| subgroup_of(g, gens, line).map(|h| h.members)).collect()
    };
    let spec = match &decl.delta {
        DeltaDecl::Explicit(v) => DeltaSpec::Explicit(subs(v)?),
        DeltaDecl::Overclosure(v) => DeltaSpec::Overclosure(subs(v)?),
        DeltaDecl::AllNonidentity => DeltaSpec::AllNonidentity,
        DeltaDecl::All => DeltaSpec::All,
    };
    let l = build_locality(g.clone(), decl.prime, &s, &spec).map_err(|e| load_error(line, e.to_string()))?;
    let mut normals = BTreeMap::new();
    for n in &decl.normals {
        let mut seed = Vec::new();
        for c in &n.gens {
            let h = group_element(g, c).ok_or_else(|| load_error(n.line.0, format!("{c} is not in the group")))?;
            seed.push(l.from_group(h).ok_or_else(|| load_error(n.line.0, format!("{c} is not in the locality")))?);
        }
        normals.insert(n.name.clone(), normal_closure(&l, seed));
    }
    Ok(LoadedLocality {
        name: decl.name.clone(),
        locality: Arc::new(l),
        normals,
    })
}

impl Workspace {
    pub fn load(doc: SpecDocument, limits: &Limits) -> Result<Workspace, CliError> {
        let mut groups = BTreeMap::new();
        for gd in &doc.groups {
            let gens: Vec<Perm> = gd
                .gens
                .iter()
                .map(|c| to_perm(gd.degree, c))
                .collect::<Result<_, _>>()
                .map_err(|e| load_error(gd.line.0, e.to_string()))?;
            let g = FiniteGroup::from_permutations(gd.degree, &gens, limits).map_err(|e| load_error(gd.line.0, e.to_string()))?;
            groups.insert(gd.name.clone(), Arc::new(g));
        }
        let mut localities = Vec::new();
        for ld in &doc.localities {
            localities.push(load_locality(&groups[&ld.group], ld, limits)?);
        }
        Ok(Workspace { doc, groups, localities })
    }

    pub fn locality(&self, name: &str) -> Result<&LoadedLocality, CliError> {
        self.localities
            .iter()
            .find(|l| l.name == name)
            .ok_or_else(|| CliError::Usage(format!("no locality named `{name}`")))
    }

    /// The named locality, or all of them.
    pub fn select(&self, name: Option<&str>) -> Result<Vec<&LoadedLocality>, CliError> {
        match name {
            Some(n) => Ok(vec![self.locality(n)?]),
            None => Ok(self.localities.iter().collect()),
        }
    }
}

/// Carrier elements from comma-separated permutations.
pub fn parse_elements(l: &Locality, text: &str) -> Result<Vec<usize>, CliError> {
    let g = l.root_group();
    let degree = g
        .degree()
        .ok_or_else(|| CliError::Usage("the group has no permutation representation".into()))?;
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let cycles = parse_cycles(part, degree)?;
        let h = group_element(g, &cycles).ok_or_else(|| CliError::Usage(format!("{part} is not in the group")))?;
        out.push(l.from_group(h).ok_or_else(|| CliError::Usage(format!("{part} is not in the locality")))?);
    }
    Ok(out)
}

fn parse_cycles(text: &str, degree: usize) -> Result<Cycles, CliError> {
    let src = format!("group g degree {degree}\ngen {text}\n");
    let doc = crate::spec::parse_spec(&src).map_err(|e| CliError::Usage(format!("`{text}`: {}", e.message)))?;
    Ok(doc.groups[0].gens[0].clone())
}
