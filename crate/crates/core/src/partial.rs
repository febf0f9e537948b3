//! The partial-group contract, the axiom checker and homomorphism checks.
//!
//! Elements of a partial group are the ids `0..size()`. The domain is never
//! stored: implementations decide membership per word. Implementations that
//! also provide a [`WordSummary`] (a finite monoid image of the free monoid
//! from which domain membership and product can be read off) get exhaustive
//! checks whose cost depends on the number of summaries rather than on the
//! number of words.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::elemset::ElemSet;
use crate::group::FiniteGroup;
use crate::Elem;

pub type Word = Vec<Elem>;

/// A finite partial group with elements `0..size()`.
pub trait PartialGroup {
    fn size(&self) -> usize;
    fn identity(&self) -> Elem;
    fn invert(&self, g: Elem) -> Elem;
    fn in_domain(&self, w: &[Elem]) -> bool;
    /// Defined exactly when `in_domain(w)`.
    fn product(&self, w: &[Elem]) -> Option<Elem>;

    fn label(&self, g: Elem) -> String {
        format!("{g}")
    }

    fn elements(&self) -> core::ops::Range<Elem> {
        0..self.size()
    }

    fn invert_word(&self, w: &[Elem]) -> Word {
        w.iter().rev().map(|&g| self.invert(g)).collect()
    }

    /// `Π(g⁻¹, x, g)` when defined.
    fn conjugate(&self, x: Elem, g: Elem) -> Option<Elem> {
        self.product(&[self.invert(g), x, g])
    }
}

/// A monoid homomorphism from words onto a finite set of summaries that
/// determines domain membership and product.
pub trait WordSummary: PartialGroup {
    type Summary: Clone + Ord + fmt::Debug;

    fn empty_summary(&self) -> Self::Summary;
    fn letter(&self, g: Elem) -> Self::Summary;
    fn compose(&self, a: &Self::Summary, b: &Self::Summary) -> Self::Summary;
    fn summary_in_domain(&self, s: &Self::Summary) -> bool;
    fn summary_product(&self, s: &Self::Summary) -> Option<Elem>;

    fn summarize(&self, w: &[Elem]) -> Self::Summary {
        w.iter().fold(self.empty_summary(), |acc, &g| {
            self.compose(&acc, &self.letter(g))
        })
    }
}

/// The rule a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Length-1 words lie in the domain and the domain is closed under segments.
    SegmentClosure,
    /// The product of a length-1 word is its entry.
    IdentityOnLetters,
    /// `u∘v∘w ∈ D` implies `u∘(Πv)∘w ∈ D` with the same product.
    Substitution,
    /// `w ∈ D` implies `w⁻¹∘w ∈ D` with product the identity.
    InverseWord,
    Multiplicativity,
    Associativity,
    UnitInsertion,
    InverseAbsorption,
    Cancellation,
    InverseClosure,
    Uncancellation,
    EmptyWord,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::SegmentClosure => "segment-closure",
            Rule::IdentityOnLetters => "identity-on-letters",
            Rule::Substitution => "substitution",
            Rule::InverseWord => "inverse-word",
            Rule::Multiplicativity => "multiplicativity",
            Rule::Associativity => "associativity",
            Rule::UnitInsertion => "unit-insertion",
            Rule::InverseAbsorption => "inverse-absorption",
            Rule::Cancellation => "cancellation",
            Rule::InverseClosure => "inverse-closure",
            Rule::Uncancellation => "uncancellation",
            Rule::EmptyWord => "empty-word",
        }
    }

    pub const ALL: [Rule; 12] = [
        Rule::EmptyWord,
        Rule::SegmentClosure,
        Rule::IdentityOnLetters,
        Rule::Substitution,
        Rule::InverseWord,
        Rule::Multiplicativity,
        Rule::Associativity,
        Rule::UnitInsertion,
        Rule::InverseAbsorption,
        Rule::Cancellation,
        Rule::InverseClosure,
        Rule::Uncancellation,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub words: Vec<Word>,
    pub detail: String,
}

/// Outcome of [`check_axioms`].
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub max_len: usize,
    /// Distinct (word, inverse word) summaries reached.
    pub summaries: usize,
    /// Whether every longer word has a summary already reached.
    pub saturated: bool,
    pub violations: Vec<Violation>,
    /// Violations beyond the stored ones.
    pub dropped: usize,
}

const MAX_STORED_PER_RULE: usize = 8;

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, rule: Rule, words: Vec<Word>, detail: String) {
        if self.violations.iter().filter(|v| v.rule == rule).count() < MAX_STORED_PER_RULE {
            self.violations.push(Violation { rule, words, detail });
        } else {
            self.dropped += 1;
        }
    }

    pub fn rules_violated(&self) -> BTreeSet<Rule> {
        self.violations.iter().map(|v| v.rule).collect()
    }
}

struct Entry<S> {
    s: S,
    si: S,
    w: Word,
    dom: bool,
    prod: Option<Elem>,
}

/// Summaries of all words of length at most `max_len`, each with a shortest
/// witness, ordered by witness length.
struct Levels<S> {
    entries: Vec<Entry<S>>,
    upto: Vec<usize>,
    saturated: bool,
}

impl<S> Levels<S> {
    fn upto(&self, k: usize) -> &[Entry<S>] {
        let k = k.min(self.upto.len() - 1);
        &self.entries[..self.upto[k]]
    }
}

fn build_levels<P: WordSummary + ?Sized>(p: &P, max_len: usize) -> Levels<P::Summary> {
    let mk = |s: P::Summary, si: P::Summary, w: Word| Entry {
        dom: p.summary_in_domain(&s),
        prod: p.summary_product(&s),
        s,
        si,
        w,
    };
    let e = p.empty_summary();
    let mut seen = BTreeSet::new();
    seen.insert((e.clone(), e.clone()));
    let mut entries = alloc::vec![mk(e.clone(), e, Word::new())];
    let mut upto = alloc::vec![1usize];
    let letters: Vec<(P::Summary, P::Summary)> = p
        .elements()
        .map(|g| (p.letter(g), p.letter(p.invert(g))))
        .collect();
    let mut saturated = false;
    for k in 1..=max_len {
        let start = if k >= 2 { upto[k - 2] } else { 0 };
        let end = upto[k - 1];
        let mut fresh = Vec::new();
        for i in start..end {
            for (g, (lg, lgi)) in letters.iter().enumerate() {
                let s = p.compose(&entries[i].s, lg);
                let si = p.compose(lgi, &entries[i].si);
                if seen.insert((s.clone(), si.clone())) {
                    let mut w = entries[i].w.clone();
                    w.push(g);
                    fresh.push(mk(s, si, w));
                }
            }
        }
        if fresh.is_empty() {
            saturated = true;
        }
        entries.extend(fresh);
        upto.push(entries.len());
        if saturated {
            break;
        }
    }
    Levels {
        entries,
        upto,
        saturated,
    }
}

fn cat(a: &[Elem], b: &[Elem]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

fn cat3(a: &[Elem], b: &[Elem], c: &[Elem]) -> Word {
    let mut w = cat(a, b);
    w.extend_from_slice(c);
    w
}

/// Exhaustively tests the partial-group axioms and their standard
/// consequences on all words of length at most `max_len`.
///
/// Binary and ternary rules quantify over splittings `u∘v` (resp. `u∘v∘w`)
/// whose total length is at most `max_len`.
pub fn check_axioms<P: WordSummary + ?Sized>(p: &P, max_len: usize) -> AxiomReport {
    let lv = build_levels(p, max_len);
    let mut rep = AxiomReport {
        max_len,
        summaries: lv.entries.len(),
        saturated: lv.saturated,
        ..Default::default()
    };
    let one = p.identity();
    let e = p.empty_summary();
    if !p.summary_in_domain(&e) || p.summary_product(&e) != Some(one) {
        rep.push(Rule::EmptyWord, alloc::vec![Word::new()], "empty word".into());
    }
    if p.invert(one) != one {
        rep.push(Rule::InverseClosure, alloc::vec![alloc::vec![one]], "identity is not self-inverse".into());
    }
    for g in p.elements() {
        if p.invert(p.invert(g)) != g {
            rep.push(Rule::InverseClosure, alloc::vec![alloc::vec![g]], "inversion is not an involution".into());
        }
        let l = p.letter(g);
        if !p.summary_in_domain(&l) {
            rep.push(Rule::SegmentClosure, alloc::vec![alloc::vec![g]], "letter outside domain".into());
        } else if p.summary_product(&l) != Some(g) {
            rep.push(Rule::IdentityOnLetters, alloc::vec![alloc::vec![g]], format!("product {:?}", p.summary_product(&l)));
        }
    }
    let ents = &lv.entries;
    let len = |e: &Entry<P::Summary>| e.w.len();

    // single words
    for a in lv.upto(max_len) {
        if !a.dom {
            if a.prod.is_some() {
                rep.push(Rule::EmptyWord, alloc::vec![a.w.clone()], "product defined outside domain".into());
            }
            continue;
        }
        let ai = &a.si;
        let inv_ok = p.summary_in_domain(ai);
        if !inv_ok || p.summary_product(ai) != a.prod.map(|x| p.invert(x)) {
            rep.push(Rule::InverseClosure, alloc::vec![a.w.clone()], "inverse word".into());
        }
        let s = p.compose(ai, &a.s);
        if !p.summary_in_domain(&s) || p.summary_product(&s) != Some(one) {
            rep.push(Rule::InverseWord, alloc::vec![a.w.clone()], "w⁻¹∘w".into());
        }
    }

    // pairs u∘v
    for a in ents.iter() {
        let rest = max_len - len(a).min(max_len);
        let mut left_cancel: BTreeMap<Elem, (Elem, usize)> = BTreeMap::new();
        let mut left_uncancel: BTreeMap<Elem, (Elem, usize)> = BTreeMap::new();
        for (bi, b) in lv.upto(rest).iter().enumerate() {
            let ab = p.compose(&a.s, &b.s);
            if !p.summary_in_domain(&ab) {
                continue;
            }
            let w = || cat(&a.w, &b.w);
            if !a.dom || !b.dom {
                rep.push(Rule::SegmentClosure, alloc::vec![w()], "prefix or suffix outside domain".into());
                continue;
            }
            let pab = p.summary_product(&ab).unwrap();
            let (pa, pb) = (a.prod.unwrap(), b.prod.unwrap());
            let pair = p.compose(&p.letter(pa), &p.letter(pb));
            if !p.summary_in_domain(&pair) || p.summary_product(&pair) != Some(pab) {
                rep.push(Rule::Multiplicativity, alloc::vec![w()], format!("(Πu,Πv) = ({pa},{pb})"));
            }
            let u1v = p.compose(&p.compose(&a.s, &p.letter(one)), &b.s);
            if !p.summary_in_domain(&u1v) || p.summary_product(&u1v) != Some(pab) {
                rep.push(Rule::UnitInsertion, alloc::vec![w()], String::new());
            }
            let uiuv = p.compose(&a.si, &ab);
            if !p.summary_in_domain(&uiuv) || p.summary_product(&uiuv) != Some(pb) {
                rep.push(Rule::InverseAbsorption, alloc::vec![w()], "u⁻¹∘u∘v".into());
            }
            let uvvi = p.compose(&ab, &b.si);
            if !p.summary_in_domain(&uvvi) || p.summary_product(&uvvi) != Some(pa) {
                rep.push(Rule::InverseAbsorption, alloc::vec![w()], "u∘v∘v⁻¹".into());
            }
            match left_cancel.get(&pab) {
                Some(&(q, wi)) if q != pb => rep.push(
                    Rule::Cancellation,
                    alloc::vec![w(), cat(&a.w, &lv.entries[wi].w)],
                    String::new(),
                ),
                Some(_) => {}
                None => {
                    left_cancel.insert(pab, (pb, bi));
                }
            }
            match left_uncancel.get(&pb) {
                Some(&(q, wi)) if q != pab => rep.push(
                    Rule::Uncancellation,
                    alloc::vec![w(), cat(&a.w, &lv.entries[wi].w)],
                    String::new(),
                ),
                Some(_) => {}
                None => {
                    left_uncancel.insert(pb, (pab, bi));
                }
            }
        }
    }
    // right cancellation and uncancellation: fix v, vary u
    for b in ents.iter() {
        if !b.dom {
            continue;
        }
        let rest = max_len - len(b).min(max_len);
        let mut cancel: BTreeMap<Elem, (Elem, usize)> = BTreeMap::new();
        let mut uncancel: BTreeMap<Elem, (Elem, usize)> = BTreeMap::new();
        for (ai, a) in lv.upto(rest).iter().enumerate() {
            if !a.dom {
                continue;
            }
            let ab = p.compose(&a.s, &b.s);
            let Some(pab) = p.summary_product(&ab) else { continue };
            let pa = a.prod.unwrap();
            let w = || cat(&a.w, &b.w);
            match cancel.get(&pab) {
                Some(&(q, wi)) if q != pa => rep.push(
                    Rule::Cancellation,
                    alloc::vec![w(), cat(&lv.entries[wi].w, &b.w)],
                    "right".into(),
                ),
                Some(_) => {}
                None => {
                    cancel.insert(pab, (pa, ai));
                }
            }
            match uncancel.get(&pa) {
                Some(&(q, wi)) if q != pab => rep.push(
                    Rule::Uncancellation,
                    alloc::vec![w(), cat(&lv.entries[wi].w, &b.w)],
                    "right".into(),
                ),
                Some(_) => {}
                None => {
                    uncancel.insert(pa, (pab, ai));
                }
            }
        }
    }

    // triples u∘v∘w; (x, y) pairs already tested against all w up to a length
    let mut subst_done: BTreeMap<(P::Summary, P::Summary), usize> = BTreeMap::new();
    let mut assoc_done: BTreeMap<(P::Summary, Elem, P::Summary), usize> = BTreeMap::new();
    for a in ents.iter() {
        if !a.dom {
            continue;
        }
        let ra = max_len - len(a).min(max_len);
        for b in lv.upto(ra) {
            if !b.dom {
                continue;
            }
            let ab = p.compose(&a.s, &b.s);
            if !p.summary_in_domain(&ab) {
                continue;
            }
            let rb = ra - len(b);
            let pb = b.prod.unwrap();
            let y = p.compose(&a.s, &p.letter(pb));
            let need_subst = match subst_done.get(&(ab.clone(), y.clone())) {
                Some(&k) if k >= rb => false,
                _ => true,
            };
            let pa = a.prod.unwrap();
            let pab = p.summary_product(&ab).unwrap();
            let need_assoc = match assoc_done.get(&(ab.clone(), pa, b.s.clone())) {
                Some(&k) if k >= rb => false,
                _ => true,
            };
            if !need_subst && !need_assoc {
                continue;
            }
            for c in lv.upto(rb) {
                let abc = p.compose(&ab, &c.s);
                if !p.summary_in_domain(&abc) {
                    continue;
                }
                let pabc = p.summary_product(&abc);
                if need_subst {
                    let ybc = p.compose(&y, &c.s);
                    if !p.summary_in_domain(&ybc) || p.summary_product(&ybc) != pabc {
                        rep.push(
                            Rule::Substitution,
                            alloc::vec![cat3(&a.w, &b.w, &c.w), cat3(&a.w, &[pb], &c.w)],
                            String::new(),
                        );
                    }
                }
                if need_assoc && c.dom {
                    let bc = p.compose(&b.s, &c.s);
                    let lhs = p.summary_product(&p.compose(&p.letter(pab), &p.letter(c.prod.unwrap())));
                    let rhs = p
                        .summary_product(&bc)
                        .and_then(|pbc| p.summary_product(&p.compose(&p.letter(pa), &p.letter(pbc))));
                    if lhs.is_none() || lhs != rhs {
                        rep.push(
                            Rule::Associativity,
                            alloc::vec![cat3(&a.w, &b.w, &c.w)],
                            format!("{lhs:?} vs {rhs:?}"),
                        );
                    }
                }
            }
            if need_subst {
                subst_done.insert((ab.clone(), y), rb);
            }
            if need_assoc {
                assoc_done.insert((ab, pa, b.s.clone()), rb);
            }
        }
    }
    rep
}

/// Word-by-word version of [`check_axioms`], used to cross-validate the
/// summary-based checker on small instances.
pub fn check_axioms_naive<P: PartialGroup + ?Sized>(p: &P, max_len: usize) -> AxiomReport {
    let mut rep = AxiomReport {
        max_len,
        ..Default::default()
    };
    let one = p.identity();
    if !p.in_domain(&[]) || p.product(&[]) != Some(one) {
        rep.push(Rule::EmptyWord, alloc::vec![Word::new()], String::new());
    }
    for g in p.elements() {
        if p.invert(p.invert(g)) != g {
            rep.push(Rule::InverseClosure, alloc::vec![alloc::vec![g]], String::new());
        }
        if !p.in_domain(&[g]) {
            rep.push(Rule::SegmentClosure, alloc::vec![alloc::vec![g]], String::new());
        } else if p.product(&[g]) != Some(g) {
            rep.push(Rule::IdentityOnLetters, alloc::vec![alloc::vec![g]], String::new());
        }
    }
    let words = all_words(p.size(), max_len);
    for w in &words {
        let Some(pw) = p.product(w) else { continue };
        rep.summaries += 1;
        let wi = p.invert_word(w);
        if p.product(&wi) != Some(p.invert(pw)) {
            rep.push(Rule::InverseClosure, alloc::vec![w.clone()], String::new());
        }
        if p.product(&cat(&wi, w)) != Some(one) {
            rep.push(Rule::InverseWord, alloc::vec![w.clone()], String::new());
        }
        let n = w.len();
        for i in 0..=n {
            for j in i..=n {
                let (u, v, x) = (&w[..i], &w[i..j], &w[j..]);
                let Some(pv) = p.product(v) else {
                    rep.push(Rule::SegmentClosure, alloc::vec![w.clone(), v.to_vec()], String::new());
                    continue;
                };
                if p.product(&cat3(u, &[pv], x)) != Some(pw) {
                    rep.push(Rule::Substitution, alloc::vec![w.clone()], format!("segment {i}..{j}"));
                }
            }
        }
        for i in 0..=n {
            let (u, v) = (&w[..i], &w[i..]);
            let (Some(pu), Some(pv)) = (p.product(u), p.product(v)) else { continue };
            if p.product(&[pu, pv]) != Some(pw) {
                rep.push(Rule::Multiplicativity, alloc::vec![w.clone()], String::new());
            }
            if p.product(&cat3(u, &[one], v)) != Some(pw) {
                rep.push(Rule::UnitInsertion, alloc::vec![w.clone()], String::new());
            }
            if p.product(&cat(&p.invert_word(u), w)) != Some(pv)
                || p.product(&cat(w, &p.invert_word(v))) != Some(pu)
            {
                rep.push(Rule::InverseAbsorption, alloc::vec![w.clone()], String::new());
            }
            for j in i..=n {
                let (a, b, c) = (&w[..i], &w[i..j], &w[j..]);
                let pr = |x: &[Elem], y: &[Elem]| match (p.product(x), p.product(y)) {
                    (Some(s), Some(t)) => p.product(&[s, t]),
                    _ => None,
                };
                let l = pr(&cat(a, b), c);
                let r = pr(a, &cat(b, c));
                if l.is_none() || l != r {
                    rep.push(Rule::Associativity, alloc::vec![w.clone()], String::new());
                }
            }
        }
    }
    // cancellation and uncancellation over pairs of words sharing a prefix
    // or a suffix
    for u in &words {
        for (v, x) in pairs(&words, max_len.saturating_sub(u.len())) {
            for (left, a, b) in [(true, cat(u, v), cat(u, x)), (false, cat(v, u), cat(x, u))] {
                let (Some(pa), Some(pb)) = (p.product(&a), p.product(&b)) else { continue };
                let (Some(pv), Some(px)) = (p.product(v), p.product(x)) else { continue };
                if pa == pb && pv != px {
                    rep.push(Rule::Cancellation, alloc::vec![a.clone(), b.clone()], if left { "left" } else { "right" }.into());
                }
                if pv == px && pa != pb {
                    rep.push(Rule::Uncancellation, alloc::vec![a, b], String::new());
                }
            }
        }
    }
    rep
}

fn pairs(words: &[Word], max: usize) -> impl Iterator<Item = (&Word, &Word)> {
    let short: Vec<&Word> = words.iter().filter(|w| w.len() <= max).collect();
    let mut out = Vec::new();
    for i in 0..short.len() {
        for j in i + 1..short.len() {
            out.push((short[i], short[j]));
        }
    }
    out.into_iter()
}

/// All words over `0..n` of length at most `max_len`, shortest first.
pub fn all_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = alloc::vec![Word::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for g in 0..n {
                let mut w = out[i].clone();
                w.push(g);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

/// Smallest subset containing `x` and the identity, closed under inversion
/// and under products of length-2 words in the domain.
pub fn generated_partial_subgroup<P: PartialGroup + ?Sized>(
    p: &P,
    x: impl IntoIterator<Item = Elem>,
) -> ElemSet {
    let n = p.size();
    let mut set = ElemSet::new(n);
    set.insert(p.identity());
    let mut queue: VecDeque<Elem> = VecDeque::new();
    queue.push_back(p.identity());
    for g in x {
        for h in [g, p.invert(g)] {
            if set.insert(h) {
                queue.push_back(h);
            }
        }
    }
    let mut members: Vec<Elem> = set.to_vec();
    while let Some(g) = queue.pop_front() {
        let snapshot = members.clone();
        for h in snapshot {
            for w in [[g, h], [h, g]] {
                if let Some(k) = p.product(&w) {
                    for k in [k, p.invert(k)] {
                        if set.insert(k) {
                            members.push(k);
                            queue.push_back(k);
                        }
                    }
                }
            }
        }
    }
    set
}

/// Products of length-2 words and inverses, tabulated.
#[derive(Clone, Debug)]
pub struct ProductTable {
    n: usize,
    prod: Vec<Option<Elem>>,
    inv: Vec<Elem>,
}

impl ProductTable {
    pub fn new<P: PartialGroup + ?Sized>(p: &P) -> Self {
        let n = p.size();
        let mut prod = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                prod.push(p.product(&[a, b]));
            }
        }
        ProductTable {
            n,
            prod,
            inv: (0..n).map(|g| p.invert(g)).collect(),
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.prod[a * self.n + b]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    /// The partial subgroup generated by `closed` and `extra`, where `closed`
    /// is already a partial subgroup.
    pub fn extend(&self, closed: &ElemSet, extra: impl IntoIterator<Item = Elem>) -> ElemSet {
        let mut set = closed.clone();
        let mut members = set.to_vec();
        let mut queue: VecDeque<Elem> = VecDeque::new();
        for g in extra {
            for h in [g, self.inv[g]] {
                if set.insert(h) {
                    members.push(h);
                    queue.push_back(h);
                }
            }
        }
        while let Some(g) = queue.pop_front() {
            let mut i = 0;
            while i < members.len() {
                let h = members[i];
                i += 1;
                for k in [self.mul(g, h), self.mul(h, g)].into_iter().flatten() {
                    for k in [k, self.inv[k]] {
                        if set.insert(k) {
                            members.push(k);
                            queue.push_back(k);
                        }
                    }
                }
            }
        }
        set
    }
}

/// Inversion-closed and closed under products of length-2 domain words.
pub fn is_partial_subgroup<P: PartialGroup + ?Sized>(p: &P, h: &ElemSet) -> bool {
    if !h.contains(p.identity()) || h.iter().any(|x| !h.contains(p.invert(x))) {
        return false;
    }
    let v = h.to_vec();
    v.iter().all(|&a| {
        v.iter().all(|&b| match p.product(&[a, b]) {
            Some(c) => h.contains(c),
            None => true,
        })
    })
}

/// A partial subgroup stable under every defined conjugation.
pub fn is_partial_normal_in<P: PartialGroup + ?Sized>(p: &P, h: &ElemSet) -> bool {
    is_partial_subgroup(p, h)
        && h.iter().all(|x| {
            p.elements().all(|g| match p.conjugate(x, g) {
                Some(y) => h.contains(y),
                None => true,
            })
        })
}

/// Whether every word with entries in `h` lies in the domain, i.e. `h` is a
/// subgroup in the partial-group sense. Exact, by saturation of summaries.
pub fn is_subgroup<P: WordSummary + ?Sized>(p: &P, h: &ElemSet) -> bool {
    if !is_partial_subgroup(p, h) {
        return false;
    }
    let letters: Vec<P::Summary> = h.iter().map(|g| p.letter(g)).collect();
    let mut seen = BTreeSet::new();
    let e = p.empty_summary();
    seen.insert(e.clone());
    let mut queue = VecDeque::from([e]);
    while let Some(s) = queue.pop_front() {
        if !p.summary_in_domain(&s) {
            return false;
        }
        for l in &letters {
            let t = p.compose(&s, l);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    true
}

/// Outcome of [`check_homomorphism`].
#[derive(Clone, Debug, Default)]
pub struct HomReport {
    pub identity_preserved: bool,
    /// Domain words whose image lies outside the target domain.
    pub domain_failures: Vec<Word>,
    /// Domain words whose image product differs from the image of the product.
    pub product_failures: Vec<Word>,
    pub saturated: bool,
}

impl HomReport {
    pub fn ok(&self) -> bool {
        self.identity_preserved && self.domain_failures.is_empty() && self.product_failures.is_empty()
    }
}

/// Joint summaries of `(w, w mapped)` for all words of length at most `max_len`.
fn joint_states<A, B>(
    a: &A,
    b: &B,
    map: &[Elem],
    max_len: usize,
) -> (Vec<(A::Summary, B::Summary, Word)>, bool)
where
    A: WordSummary + ?Sized,
    B: WordSummary + ?Sized,
{
    let mut seen = BTreeSet::new();
    let e = (a.empty_summary(), b.empty_summary());
    seen.insert(e.clone());
    let mut out = alloc::vec![(e.0, e.1, Word::new())];
    let letters: Vec<(A::Summary, B::Summary)> = a
        .elements()
        .map(|g| (a.letter(g), b.letter(map[g])))
        .collect();
    let mut start = 0;
    let mut saturated = false;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for (g, (la, lb)) in letters.iter().enumerate() {
                let sa = a.compose(&out[i].0, la);
                let sb = b.compose(&out[i].1, lb);
                if seen.insert((sa.clone(), sb.clone())) {
                    let mut w = out[i].2.clone();
                    w.push(g);
                    out.push((sa, sb, w));
                }
            }
        }
        if out.len() == end {
            saturated = true;
            break;
        }
        start = end;
    }
    (out, saturated)
}

/// Verifies that `map` sends domain words to domain words and commutes with
/// products, over all words of length at most `max_len`.
pub fn check_homomorphism<A, B>(a: &A, b: &B, map: &[Elem], max_len: usize) -> HomReport
where
    A: WordSummary + ?Sized,
    B: WordSummary + ?Sized,
{
    let mut rep = HomReport {
        identity_preserved: map[a.identity()] == b.identity(),
        ..Default::default()
    };
    let (states, saturated) = joint_states(a, b, map, max_len);
    rep.saturated = saturated;
    for (sa, sb, w) in states {
        if !a.summary_in_domain(&sa) {
            continue;
        }
        if !b.summary_in_domain(&sb) {
            rep.domain_failures.push(w);
            continue;
        }
        let pa = a.summary_product(&sa).unwrap();
        if b.summary_product(&sb) != Some(map[pa]) {
            rep.product_failures.push(w);
        }
    }
    rep
}

/// Verifies that every target domain word of length at most `max_len` is the
/// image of a source domain word, using `section` (a right inverse of `map`)
/// to lift. Returns the target words that fail to lift.
pub fn check_domain_surjective<A, B>(
    a: &A,
    b: &B,
    map: &[Elem],
    section: &[Elem],
    max_len: usize,
) -> Vec<Word>
where
    A: WordSummary + ?Sized,
    B: WordSummary + ?Sized,
{
    let mut bad = Vec::new();
    for (g, &s) in section.iter().enumerate() {
        if map[s] != g {
            bad.push(alloc::vec![g]);
        }
    }
    if !bad.is_empty() {
        return bad;
    }
    let (states, _) = joint_states(b, a, section, max_len);
    for (sb, sa, w) in states {
        if b.summary_in_domain(&sb) && !a.summary_in_domain(&sa) {
            bad.push(w);
        }
    }
    bad
}

/// `{g : map(g) = identity}`.
pub fn kernel<B: PartialGroup + ?Sized>(b: &B, map: &[Elem]) -> ElemSet {
    ElemSet::from_iter(map.len(), (0..map.len()).filter(|&g| map[g] == b.identity()))
}

/// Bijective homomorphism whose word map carries the domain onto the target
/// domain.
pub fn is_isomorphism<A, B>(a: &A, b: &B, map: &[Elem], max_len: usize) -> bool
where
    A: WordSummary + ?Sized,
    B: WordSummary + ?Sized,
{
    if a.size() != b.size() {
        return false;
    }
    let mut inv = alloc::vec![usize::MAX; b.size()];
    for (g, &h) in map.iter().enumerate() {
        if inv[h] != usize::MAX {
            return false;
        }
        inv[h] = g;
    }
    check_homomorphism(a, b, map, max_len).ok()
        && check_domain_surjective(a, b, map, &inv, max_len).is_empty()
}

/// The free partial group on one generator: elements `𝟙 = 0`, `a = 1`,
/// `b = 2 = a⁻¹`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeOneGenerator;

pub const FREE_ONE: Elem = 0;
pub const FREE_A: Elem = 1;
pub const FREE_B: Elem = 2;

/// Summary of a word in the free one-generator partial group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FreeSummary {
    Empty,
    /// Alternating core with its first and last letter.
    Alt(Elem, Elem),
    Invalid,
}

impl PartialGroup for FreeOneGenerator {
    fn size(&self) -> usize {
        3
    }
    fn identity(&self) -> Elem {
        FREE_ONE
    }
    fn invert(&self, g: Elem) -> Elem {
        match g {
            FREE_A => FREE_B,
            FREE_B => FREE_A,
            x => x,
        }
    }
    fn in_domain(&self, w: &[Elem]) -> bool {
        let core: Vec<Elem> = w.iter().copied().filter(|&g| g != FREE_ONE).collect();
        core.windows(2).all(|p| p[0] != p[1])
    }
    fn product(&self, w: &[Elem]) -> Option<Elem> {
        if !self.in_domain(w) {
            return None;
        }
        let a = w.iter().filter(|&&g| g == FREE_A).count() as i64;
        let b = w.iter().filter(|&&g| g == FREE_B).count() as i64;
        Some(match a - b {
            0 => FREE_ONE,
            1 => FREE_A,
            _ => FREE_B,
        })
    }
    fn label(&self, g: Elem) -> String {
        ["1", "a", "b"][g].into()
    }
}

impl WordSummary for FreeOneGenerator {
    type Summary = FreeSummary;
    fn empty_summary(&self) -> FreeSummary {
        FreeSummary::Empty
    }
    fn letter(&self, g: Elem) -> FreeSummary {
        if g == FREE_ONE {
            FreeSummary::Empty
        } else {
            FreeSummary::Alt(g, g)
        }
    }
    fn compose(&self, a: &FreeSummary, b: &FreeSummary) -> FreeSummary {
        use FreeSummary::*;
        match (*a, *b) {
            (Invalid, _) | (_, Invalid) => Invalid,
            (Empty, x) | (x, Empty) => x,
            (Alt(f1, l1), Alt(f2, l2)) => {
                if l1 == f2 {
                    Invalid
                } else {
                    Alt(f1, l2)
                }
            }
        }
    }
    fn summary_in_domain(&self, s: &FreeSummary) -> bool {
        *s != FreeSummary::Invalid
    }
    fn summary_product(&self, s: &FreeSummary) -> Option<Elem> {
        match *s {
            FreeSummary::Empty => Some(FREE_ONE),
            FreeSummary::Alt(f, l) if f == l => Some(f),
            FreeSummary::Alt(_, _) => Some(FREE_ONE),
            FreeSummary::Invalid => None,
        }
    }
}

/// A magma table with identity 0 and full domain, whose word product is the
/// left-to-right fold. A partial group exactly when the table is a group.
#[derive(Clone, Debug)]
pub struct TablePartialGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
}

impl TablePartialGroup {
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(g.mul(a, b) as u32);
            }
        }
        TablePartialGroup {
            n,
            table,
            inv: (0..n).map(|a| g.inv(a) as u32).collect(),
        }
    }

    /// Overwrites one product entry.
    pub fn set(&mut self, a: Elem, b: Elem, c: Elem) {
        self.table[a * self.n + b] = c as u32;
    }

    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.n + b] as Elem
    }
}

impl PartialGroup for TablePartialGroup {
    fn size(&self) -> usize {
        self.n
    }
    fn identity(&self) -> Elem {
        0
    }
    fn invert(&self, g: Elem) -> Elem {
        self.inv[g] as Elem
    }
    fn in_domain(&self, _w: &[Elem]) -> bool {
        true
    }
    fn product(&self, w: &[Elem]) -> Option<Elem> {
        Some(w.iter().fold(0, |acc, &g| self.get(acc, g)))
    }
}

impl WordSummary for TablePartialGroup {
    /// The right action of the word on the table's elements.
    type Summary = Vec<u32>;
    fn empty_summary(&self) -> Vec<u32> {
        (0..self.n as u32).collect()
    }
    fn letter(&self, g: Elem) -> Vec<u32> {
        (0..self.n).map(|x| self.get(x, g) as u32).collect()
    }
    fn compose(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|&x| b[x as usize]).collect()
    }
    fn summary_in_domain(&self, _s: &Vec<u32>) -> bool {
        true
    }
    fn summary_product(&self, s: &Vec<u32>) -> Option<Elem> {
        Some(s[0] as Elem)
    }
}

impl PartialGroup for FiniteGroup {
    fn size(&self) -> usize {
        self.order()
    }
    fn identity(&self) -> Elem {
        0
    }
    fn invert(&self, g: Elem) -> Elem {
        self.inv(g)
    }
    fn in_domain(&self, _w: &[Elem]) -> bool {
        true
    }
    fn product(&self, w: &[Elem]) -> Option<Elem> {
        Some(FiniteGroup::product(self, w))
    }
    fn label(&self, g: Elem) -> String {
        FiniteGroup::label(self, g).into()
    }
}

impl WordSummary for FiniteGroup {
    type Summary = Elem;
    fn empty_summary(&self) -> Elem {
        0
    }
    fn letter(&self, g: Elem) -> Elem {
        g
    }
    fn compose(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(*a, *b)
    }
    fn summary_in_domain(&self, _s: &Elem) -> bool {
        true
    }
    fn summary_product(&self, s: &Elem) -> Option<Elem> {
        Some(*s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Limits;
    use crate::perm::Perm;
    use alloc::vec;

    fn s3() -> FiniteGroup {
        let gens = [
            Perm::from_cycles(3, &[vec![1, 2]]).unwrap(),
            Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
        ];
        FiniteGroup::from_permutations(3, &gens, &Limits::default()).unwrap()
    }

    #[test]
    fn free_examples() {
        let f = FreeOneGenerator;
        assert_eq!(f.product(&[FREE_A, FREE_B, FREE_A]), Some(FREE_A));
        assert!(!f.in_domain(&[FREE_A, FREE_A]));
        assert_eq!(f.product(&[FREE_ONE, FREE_A, FREE_ONE, FREE_B]), Some(FREE_ONE));
        assert!(check_axioms(&f, 6).is_empty());
    }

    #[test]
    fn free_summary_matches_words() {
        let f = FreeOneGenerator;
        for w in all_words(3, 6) {
            let s = f.summarize(&w);
            assert_eq!(f.summary_in_domain(&s), f.in_domain(&w));
            assert_eq!(f.summary_product(&s), f.product(&w));
        }
    }

    #[test]
    fn groups_satisfy_axioms() {
        let g = s3();
        assert!(check_axioms(&g, 6).is_empty());
        assert!(check_axioms(&TablePartialGroup::from_group(&g), 6).is_empty());
    }

    #[test]
    fn planted_violation_cites_substitution() {
        let g = s3();
        let mut t = TablePartialGroup::from_group(&g);
        let (a, b) = (1, 2);
        let c = (0..6).find(|&c| c != g.mul(a, b) && c != 0).unwrap();
        t.set(a, b, c);
        let rep = check_axioms(&t, 4);
        assert!(rep.rules_violated().contains(&Rule::Substitution));
        assert!(check_axioms_naive(&t, 3).rules_violated().contains(&Rule::Substitution));
    }

    #[test]
    fn naive_and_summary_checkers_agree_on_free() {
        let f = FreeOneGenerator;
        assert!(check_axioms_naive(&f, 5).is_empty());
    }

    #[test]
    fn generated_subgroups() {
        let f = FreeOneGenerator;
        assert_eq!(generated_partial_subgroup(&f, []).to_vec(), vec![0]);
        assert_eq!(generated_partial_subgroup(&f, [FREE_A]).len(), 3);
        let g = s3();
        for x in g.elements() {
            assert_eq!(generated_partial_subgroup(&g, [x]), g.subgroup_closure([x]).members);
        }
    }

    #[test]
    fn subgroup_and_normality_tests() {
        let g = s3();
        let all = ElemSet::full(6);
        assert!(is_partial_subgroup(&g, &all) && is_partial_normal_in(&g, &all));
        let one = g.set([0]);
        assert!(is_partial_subgroup(&g, &one) && is_partial_normal_in(&g, &one));
        let t = g.sylow_p(2, &Limits::default()).unwrap()[0].members.clone();
        assert!(is_partial_subgroup(&g, &t));
        assert!(!is_partial_normal_in(&g, &t));
        let f = FreeOneGenerator;
        assert!(!is_subgroup(&f, &ElemSet::full(3)));
        assert!(is_subgroup(&f, &ElemSet::from_iter(3, [0])));
    }

    #[test]
    fn homomorphisms() {
        let g = s3();
        let id: Vec<Elem> = g.elements().collect();
        let rep = check_homomorphism(&g, &g, &id, 6);
        assert!(rep.ok());
        assert_eq!(kernel(&g, &id).to_vec(), vec![0]);
        assert!(is_isomorphism(&g, &g, &id, 6));
        // the free partial group maps onto any element of a group
        for x in g.elements() {
            let map = vec![0, x, g.inv(x)];
            assert!(check_homomorphism(&FreeOneGenerator, &g, &map, 8).ok());
        }
        // a non-homomorphic total map between groups is rejected
        let mut bad = id.clone();
        bad.swap(1, 2);
        let is_hom = g.elements().all(|a| {
            g.elements()
                .all(|b| bad[g.mul(a, b)] == g.mul(bad[a], bad[b]))
        });
        assert_eq!(check_homomorphism(&g, &g, &bad, 3).ok(), is_hom);
    }
}
