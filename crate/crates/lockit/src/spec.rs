//! The line-oriented `.loc` format.
//!
//! ```text
//! group gl32 degree 7
//! gen (1 3)(5 7)
//! gen (1 2 4 3 6 7 5)
//! locality small group gl32 prime 2
//! sylow auto
//! delta explicit { (1 3)(5 7), (1 3 5 7)(2 6); (1 3)(5 7), (1 5)(3 7) }
//! normal top gens (1 3)(5 7)
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

/// A permutation in 1-based cycle notation, normalized: no fixed points,
/// each cycle starting at its least point, cycles sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycles(pub Vec<Vec<usize>>);

impl Cycles {
    pub fn new(cycles: Vec<Vec<usize>>) -> Self {
        let mut out: Vec<Vec<usize>> = cycles
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|mut c| {
                let i = c.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i).unwrap();
                c.rotate_left(i);
                c
            })
            .collect();
        out.sort();
        Cycles(out)
    }
}

impl fmt::Display for Cycles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for c in &self.0 {
            let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// Source line of a declaration. Ignored by equality, so that documents
/// compare by content.
#[derive(Clone, Copy, Debug, Default)]
pub struct Line(pub usize);

impl PartialEq for Line {
    fn eq(&self, _: &Line) -> bool {
        true
    }
}

impl Eq for Line {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDecl {
    pub name: String,
    pub degree: usize,
    pub gens: Vec<Cycles>,
    pub line: Line,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SylowDecl {
    Auto,
    Gens(Vec<Cycles>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaDecl {
    Explicit(Vec<Vec<Cycles>>),
    Overclosure(Vec<Vec<Cycles>>),
    AllNonidentity,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalDecl {
    pub name: String,
    pub gens: Vec<Cycles>,
    pub line: Line,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityDecl {
    pub name: String,
    pub group: String,
    pub prime: usize,
    pub sylow: SylowDecl,
    pub delta: DeltaDecl,
    pub normals: Vec<NormalDecl>,
    pub line: Line,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecDocument {
    pub groups: Vec<GroupDecl>,
    pub localities: Vec<LocalityDecl>,
}

impl SpecDocument {
    pub fn group(&self, name: &str) -> Option<&GroupDecl> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn locality(&self, name: &str) -> Option<&LocalityDecl> {
        self.localities.iter().find(|l| l.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnresolvedReference,
    UnsupportedDelta,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn err_at(&self, column: usize, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            kind,
            message: message.into(),
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        self.err_at(self.col(), ParseErrorKind::Syntax, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    /// A bare word; returns its starting column.
    fn word(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if c.is_whitespace() || "{}();,".contains(c) {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a word"));
        }
        Ok((start + 1, self.chars[start..self.pos].iter().collect()))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (col, w) = self.word()?;
        if w != kw {
            return Err(self.err_at(col, ParseErrorKind::Syntax, format!("expected `{kw}`, found `{w}`")));
        }
        Ok(())
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let (col, w) = self.word()?;
        w.parse()
            .map_err(|_| self.err_at(col, ParseErrorKind::Syntax, format!("expected a number, found `{w}`")))
    }

    fn name(&mut self) -> Result<(usize, String), ParseError> {
        let (col, w) = self.word()?;
        if !w.chars().all(|c| c.is_ascii_alphanumeric() || "_-.".contains(c)) {
            return Err(self.err_at(col, ParseErrorKind::Syntax, format!("invalid name `{w}`")));
        }
        Ok((col, w))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    /// One permutation: `()` or a run of cycles.
    fn perm(&mut self, degree: usize) -> Result<Cycles, ParseError> {
        if self.peek() != Some('(') {
            return Err(self.err("expected a permutation in cycle notation"));
        }
        let mut cycles = Vec::new();
        let mut seen = vec![false; degree + 1];
        while self.peek() == Some('(') {
            self.pos += 1;
            let mut cyc = Vec::new();
            while self.peek() != Some(')') {
                let col = self.col();
                let x = self.number()?;
                if x == 0 || x > degree {
                    return Err(self.err_at(col, ParseErrorKind::Syntax, format!("point {x} outside 1..{degree}")));
                }
                if seen[x] {
                    return Err(self.err_at(col, ParseErrorKind::Syntax, format!("point {x} repeated")));
                }
                seen[x] = true;
                cyc.push(x);
            }
            self.expect(')')?;
            cycles.push(cyc);
        }
        Ok(Cycles::new(cycles))
    }

    /// Permutations separated by `sep`.
    fn perm_list(&mut self, degree: usize, sep: char, stop: &[char]) -> Result<Vec<Cycles>, ParseError> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                None => break,
                Some(c) if stop.contains(&c) => break,
                _ => {}
            }
            out.push(self.perm(degree)?);
            if !self.eat(sep) {
                break;
            }
        }
        Ok(out)
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Parses a document; errors carry line and column.
pub fn parse_spec(text: &str) -> Result<SpecDocument, ParseError> {
    let mut doc = SpecDocument::default();
    // which declaration the following lines attach to
    enum Open {
        None,
        Group,
        Locality { sylow: bool, delta: bool },
    }
    let mut open = Open::None;
    let mut names: BTreeMap<String, usize> = BTreeMap::new();
    let check_complete = |doc: &SpecDocument, open: &Open| -> Result<(), ParseError> {
        if let Open::Locality { delta: false, .. } = open {
            let l = doc.localities.last().unwrap();
            return Err(ParseError {
                line: l.line.0,
                column: 1,
                kind: ParseErrorKind::Syntax,
                message: format!("locality `{}` has no `delta` line", l.name),
            });
        }
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let body = strip_comment(raw);
        let mut c = Cursor::new(body, lineno);
        if c.at_end() {
            continue;
        }
        let (col, kw) = c.word()?;
        match kw.as_str() {
            "group" => {
                check_complete(&doc, &open)?;
                let (ncol, name) = c.name()?;
                if let Some(prev) = names.insert(name.clone(), lineno) {
                    return Err(c.err_at(ncol, ParseErrorKind::Syntax, format!("`{name}` already declared on line {prev}")));
                }
                c.keyword("degree")?;
                let dcol = c.col();
                let degree = c.number()?;
                if degree == 0 {
                    return Err(c.err_at(dcol, ParseErrorKind::Syntax, "degree must be positive"));
                }
                c.finish()?;
                doc.groups.push(GroupDecl {
                    name,
                    degree,
                    gens: Vec::new(),
                    line: Line(lineno),
                });
                open = Open::Group;
            }
            "gen" => {
                let Open::Group = open else {
                    return Err(c.err_at(col, ParseErrorKind::Syntax, "`gen` outside a group"));
                };
                let g = doc.groups.last_mut().unwrap();
                let p = c.perm(g.degree)?;
                c.finish()?;
                g.gens.push(p);
            }
            "locality" => {
                check_complete(&doc, &open)?;
                let (ncol, name) = c.name()?;
                if let Some(prev) = names.insert(name.clone(), lineno) {
                    return Err(c.err_at(ncol, ParseErrorKind::Syntax, format!("`{name}` already declared on line {prev}")));
                }
                c.keyword("group")?;
                let (gcol, group) = c.name()?;
                if doc.group(&group).is_none() {
                    return Err(c.err_at(
                        gcol,
                        ParseErrorKind::UnresolvedReference,
                        format!("unknown group `{group}`"),
                    ));
                }
                c.keyword("prime")?;
                let pcol = c.col();
                let prime = c.number()?;
                if prime < 2 || (2..prime).any(|d| prime % d == 0) {
                    return Err(c.err_at(pcol, ParseErrorKind::Syntax, format!("{prime} is not a prime")));
                }
                c.finish()?;
                doc.localities.push(LocalityDecl {
                    name,
                    group,
                    prime,
                    sylow: SylowDecl::Auto,
                    delta: DeltaDecl::All,
                    normals: Vec::new(),
                    line: Line(lineno),
                });
                open = Open::Locality {
                    sylow: false,
                    delta: false,
                };
            }
            "sylow" | "delta" | "normal" => {
                let Open::Locality { sylow, delta } = &mut open else {
                    return Err(c.err_at(col, ParseErrorKind::Syntax, format!("`{kw}` outside a locality")));
                };
                let loc = doc.localities.last_mut().unwrap();
                let degree = doc.groups.iter().find(|g| g.name == loc.group).unwrap().degree;
                match kw.as_str() {
                    "sylow" => {
                        if *sylow {
                            return Err(c.err_at(col, ParseErrorKind::Syntax, "second `sylow` line"));
                        }
                        *sylow = true;
                        let (mcol, mode) = c.word()?;
                        loc.sylow = match mode.as_str() {
                            "auto" => SylowDecl::Auto,
                            "gens" => {
                                let mut gens = Vec::new();
                                loop {
                                    gens.push(c.perm(degree)?);
                                    if !(c.eat(';') || c.eat(',')) {
                                        break;
                                    }
                                }
                                SylowDecl::Gens(gens)
                            }
                            _ => {
                                return Err(c.err_at(
                                    mcol,
                                    ParseErrorKind::Syntax,
                                    format!("expected `auto` or `gens`, found `{mode}`"),
                                ))
                            }
                        };
                        c.finish()?;
                    }
                    "delta" => {
                        if *delta {
                            return Err(c.err_at(col, ParseErrorKind::Syntax, "second `delta` line"));
                        }
                        *delta = true;
                        let (mcol, mode) = c.word()?;
                        loc.delta = match mode.as_str() {
                            "explicit" | "overclosure" => {
                                c.expect('{')?;
                                let mut subs = Vec::new();
                                loop {
                                    subs.push(c.perm_list(degree, ',', &[';', '}'])?);
                                    if !c.eat(';') {
                                        break;
                                    }
                                }
                                c.expect('}')?;
                                if mode == "explicit" {
                                    DeltaDecl::Explicit(subs)
                                } else {
                                    DeltaDecl::Overclosure(subs)
                                }
                            }
                            "all-nonidentity" => DeltaDecl::AllNonidentity,
                            "all" => DeltaDecl::All,
                            _ => {
                                return Err(c.err_at(
                                    mcol,
                                    ParseErrorKind::UnsupportedDelta,
                                    format!("unsupported delta mode `{mode}`"),
                                ))
                            }
                        };
                        c.finish()?;
                    }
                    _ => {
                        let (ncol, name) = c.name()?;
                        if loc.normals.iter().any(|n| n.name == name) {
                            return Err(c.err_at(ncol, ParseErrorKind::Syntax, format!("normal `{name}` already declared")));
                        }
                        c.keyword("gens")?;
                        let gens = c.perm_list(degree, ',', &[])?;
                        c.finish()?;
                        loc.normals.push(NormalDecl {
                            name,
                            gens,
                            line: Line(lineno),
                        });
                    }
                }
            }
            _ => {
                return Err(c.err_at(col, ParseErrorKind::Syntax, format!("unknown keyword `{kw}`")));
            }
        }
    }
    check_complete(&doc, &open)?;
    Ok(doc)
}

fn join_perms(ps: &[Cycles], sep: &str) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(sep)
}

/// Canonical text of a document; `parse_spec(serialize(d)) == d`.
pub fn serialize(doc: &SpecDocument) -> String {
    let mut out = String::new();
    for g in &doc.groups {
        writeln!(out, "group {} degree {}", g.name, g.degree).unwrap();
        for p in &g.gens {
            writeln!(out, "gen {p}").unwrap();
        }
        out.push('\n');
    }
    for l in &doc.localities {
        writeln!(out, "locality {} group {} prime {}", l.name, l.group, l.prime).unwrap();
        match &l.sylow {
            SylowDecl::Auto => out.push_str("sylow auto\n"),
            SylowDecl::Gens(gs) => writeln!(out, "sylow gens {}", join_perms(gs, "; ")).unwrap(),
        }
        let subs = |v: &[Vec<Cycles>]| v.iter().map(|s| join_perms(s, ", ")).collect::<Vec<_>>().join("; ");
        match &l.delta {
            DeltaDecl::Explicit(v) => writeln!(out, "delta explicit {{ {} }}", subs(v)).unwrap(),
            DeltaDecl::Overclosure(v) => writeln!(out, "delta overclosure {{ {} }}", subs(v)).unwrap(),
            DeltaDecl::AllNonidentity => out.push_str("delta all-nonidentity\n"),
            DeltaDecl::All => out.push_str("delta all\n"),
        }
        for n in &l.normals {
            writeln!(out, "normal {} gens {}", n.name, join_perms(&n.gens, ", ")).unwrap();
        }
        out.push('\n');
    }
    out
}
