//! Verification suites grouped by area.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::catalog;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::locality::{validate_locality, Locality};
use crate::normal::{
    check_cosets, check_frattini, check_splitting, enumerate_partial_normals, is_partial_normal, maximal_cosets,
    NormalEnumeration, PartialNormal,
};
use crate::omega::{
    check_sylow, compute_omega, compute_omega_by_maps, compute_omega_by_states, is_strongly_closed,
    largest_normalized_object, o_p, subgroups_of_locality, OmegaPoset,
};
use crate::partial::{check_axioms, AxiomReport, FreeOneGenerator, Word};
use crate::products::check_products;
use crate::quotient::{check_first_isomorphism, check_image_lemmas, check_quotient, quotient, subgroup_correspondence};
use crate::report::Report;
use crate::Elem;

/// Cap on enumerated subgroups of a carrier.
pub const SUBGROUP_CAP: usize = 4000;

/// Selectable suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Axioms,
    Sylow,
    Cosets,
    Frattini,
    Splitting,
    Quotient,
    Products,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "axioms",
        "sylow",
        "cosets",
        "frattini",
        "splitting",
        "quotient",
        "products",
        "all",
    ];

    pub fn parse(s: &str) -> Result<Suite> {
        Ok(match s {
            "axioms" => Suite::Axioms,
            "sylow" => Suite::Sylow,
            "cosets" => Suite::Cosets,
            "frattini" => Suite::Frattini,
            "splitting" => Suite::Splitting,
            "quotient" => Suite::Quotient,
            "products" => Suite::Products,
            "all" => Suite::All,
            _ => return Err(Error::InvalidInput(format!("unknown suite `{s}`"))),
        })
    }

    pub fn name(self) -> &'static str {
        Suite::NAMES[self as usize]
    }
}

/// Folds an axiom report into named checks, one per rule.
pub fn axiom_checks(ax: &AxiomReport) -> Report {
    let mut r = Report::new();
    let mut by_rule: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for v in &ax.violations {
        by_rule
            .entry(v.rule.name())
            .or_default()
            .push(format!("{:?}: {}", v.words, v.detail));
    }
    for rule in crate::partial::Rule::ALL {
        match by_rule.remove(rule.name()) {
            None => r.case(rule.name(), true, String::new),
            Some(ds) => {
                for d in ds {
                    r.fail(rule.name(), d);
                }
            }
        }
    }
    if ax.dropped > 0 {
        r.fail("unreported-violations", format!("{}", ax.dropped));
    }
    r
}

pub fn axioms_suite(l: &Locality, max_len: usize) -> Report {
    axiom_checks(&check_axioms(l, max_len))
}

pub fn free_one_suite(max_len: usize) -> Report {
    axiom_checks(&check_axioms(&FreeOneGenerator, max_len))
}

/// Words of length at most 2, one per class of `(S_u, c_u|S_u)`.
fn word_classes(l: &Locality) -> Vec<(Word, ElemSet, Vec<Option<Elem>>)> {
    let mut seen: BTreeMap<(ElemSet, Vec<Option<Elem>>), Word> = BTreeMap::new();
    let mut words: Vec<Word> = alloc::vec![Vec::new()];
    words.extend(l.elements().map(|g| alloc::vec![g]));
    for a in l.elements() {
        for b in l.elements() {
            words.push(alloc::vec![a, b]);
        }
    }
    for w in words {
        let su = l.s_w_set(&w);
        let img: Vec<Option<Elem>> = l
            .s_elements()
            .iter()
            .map(|&x| {
                if su.contains(x) {
                    w.iter().try_fold(x, |y, &g| l.conj(y, g))
                } else {
                    None
                }
            })
            .collect();
        seen.entry((su, img)).or_insert(w);
    }
    seen.into_iter().map(|((s, i), w)| (w, s, i)).collect()
}

fn inverse_word(l: &Locality, w: &[Elem]) -> Word {
    w.iter().rev().map(|&g| l.inv(g)).collect()
}

/// Subgroups of `S`, objects, `⋆`, `Ω`, biset and Sylow properties.
pub fn structure_suite(l: &Locality, omega: &OmegaPoset, cap: usize) -> Report {
    let mut r = Report::new();
    let lat = l.lattice();
    let s_elems = l.s_elements().to_vec();
    let pos = |x: Elem| s_elems.iter().position(|&y| y == x).unwrap();

    for g in l.elements() {
        let sg = l.s_g_checked(g);
        r.case("s_g-is-object", sg.as_ref().is_ok_and(|&p| l.is_object(p)), || l.label(g).into());
        if let Ok(sg) = sg {
            r.case("s_g-inverse", l.conj_sub(sg, g) == Some(l.s_g(l.inv(g))), || l.label(g).into());
        }
    }

    let classes = word_classes(l);
    for (u, su, img) in &classes {
        let su_img = l.set(img.iter().flatten().copied());
        let ui = inverse_word(l, u);
        for (v, sv, _) in &classes {
            let uv: Word = u.iter().chain(v).copied().collect();
            // ((S_u)^u ∩ S_v)^{u⁻¹}
            let meet = su_img.intersection(sv);
            let back = l.set(
                su.iter()
                    .filter(|&x| img[pos(x)].is_some_and(|y| meet.contains(y))),
            );
            r.case("s_w-of-concatenation", l.s_w_set(&uv) == back, || format!("{u:?} {v:?}"));
            let uuv: Word = u.iter().chain(&ui).chain(v).copied().collect();
            r.case("s_w-intersection", su.intersection(sv) == l.s_w_set(&uuv), || format!("{u:?} {v:?}"));
        }
        let Some(su_id) = l.sub_id(su) else {
            r.fail("s_w-is-subgroup", format!("{u:?}"));
            continue;
        };
        r.case("s_w-is-subgroup", true, String::new);
        r.case("s_w-in-omega", omega.contains(su_id), || format!("{u:?}"));
        for x in lat.ids().filter(|&x| lat.le(x, su_id)) {
            let xs = omega.star(l, x);
            let lhs = l.conj_sub_word(xs, u);
            let rhs = l.conj_sub_word(x, u).map(|y| omega.star(l, y));
            r.case("star-commutes-with-conjugation", lhs.is_some() && lhs == rhs, || {
                format!("{:?} by {u:?}", lat.set(x))
            });
            let dx = omega.dim(l, x);
            r.case("dim-conjugation-invariant", rhs.is_some_and(|y| omega.dim_of[&y] == dx), || {
                format!("{:?} by {u:?}", lat.set(x))
            });
        }
    }

    for x in lat.ids() {
        let xs = omega.star(l, x);
        r.case("star-idempotent", omega.star(l, xs) == xs, String::new);
        for y in lat.ids() {
            let ys = omega.star(l, y);
            if lat.le(x, y) {
                r.case("star-monotone", lat.le(xs, ys), String::new);
                r.case("dim-monotone", omega.dim(l, x) <= omega.dim(l, y), String::new);
                if xs == x {
                    r.case("dim-detects-equality", (omega.dim(l, x) == omega.dim(l, y)) == (x == y), || {
                        format!("{:?} ≤ {:?}", lat.set(x), lat.set(y))
                    });
                }
            }
            let lhs = lat.join(xs, ys);
            r.case("star-of-join", lat.le(lhs, omega.star(l, lat.join(x, y))), String::new);
        }
    }
    r.case("omega-intersection-closed", omega.intersection_closed(l), String::new);
    r.case("omega-map-route", compute_omega_by_maps(l).members == omega.members, String::new);
    if let crate::locality::Realization::Ambient { .. } = l.realization() {
        r.case("omega-state-route", compute_omega_by_states(l).members == omega.members, String::new);
    }

    let op = o_p(l);
    r.case("o_p-partial-normal", is_partial_normal(l, lat.set(op)), String::new);
    r.case("o_p-strongly-closed", is_strongly_closed(l, op), String::new);

    for f in l.elements() {
        for g in l.elements() {
            if l.conj(f, g) == Some(f) {
                r.case("fixed-conjugate-commutes", l.mul(f, g).is_some() && l.mul(f, g) == l.mul(g, f), || {
                    format!("({}, {})", l.label(f), l.label(g))
                });
                r.case("fixed-conjugate-symmetric", l.conj(g, f) == Some(g), || {
                    format!("({}, {})", l.label(f), l.label(g))
                });
            }
        }
    }

    let nls: Vec<Elem> = l.normalizer(l.s_id()).to_vec();
    for (u, su, _) in &classes {
        if !l.sub_id(su).is_some_and(|p| l.is_object(p)) {
            continue;
        }
        for &g in &nls {
            for &h in &nls {
                let w: Word = core::iter::once(g).chain(u.iter().copied()).chain([h]).collect();
                let ok = l.sub_id(&l.s_w_set(&w)).is_some_and(|p| l.is_object(p));
                r.case("domain-normalizer-biset", ok, || format!("{} {u:?} {}", l.label(g), l.label(h)));
            }
        }
    }

    match subgroups_of_locality(l, |_| true, |_| true, cap) {
        None => r.fail("subgroups-enumerated", format!("more than {cap} subgroups")),
        Some(hs) => {
            r.case("subgroups-enumerated", true, String::new);
            for h in &hs {
                let p = largest_normalized_object(l, h);
                let detail = || format!("{h:?}");
                r.case("normalized-object-in-delta", l.is_object(p) && omega.contains(p), detail);
                r.case("normalized-object-normalized", h.is_subset(&l.normalizer(p)), detail);
                let largest = lat
                    .ids()
                    .filter(|&q| h.iter().all(|g| l.conj_sub(q, g) == Some(q)))
                    .all(|q| lat.le(q, p));
                r.case("normalized-object-largest", largest, detail);
            }
        }
    }
    r.merge("", check_sylow(l, cap));
    r
}

/// Per partial normal subgroup: strong closure, `PT = P^x T`, maximality of
/// `T`, cosets, Frattini and splitting.
pub fn normal_suite(l: &Locality, omega: &OmegaPoset, normals: &[ElemSet], which: Suite, cap: usize) -> Report {
    let mut r = Report::new();
    let lat = l.lattice();
    for n in normals {
        let pn = match PartialNormal::new(l, omega, n.clone()) {
            Ok(pn) => pn,
            Err(e) => {
                r.fail("partial-normal", format!("{n:?}: {e}"));
                continue;
            }
        };
        if matches!(which, Suite::Cosets | Suite::All) {
            r.case("t-strongly-closed", is_strongly_closed(l, pn.t), || format!("{n:?}"));
            for x in n.iter() {
                let sx = l.s_g(x);
                for p in lat.ids().filter(|&p| lat.le(p, sx)) {
                    let px = l.conj_sub(p, x).unwrap();
                    r.case("t-absorbs-conjugation", lat.join(p, pn.t) == lat.join(px, pn.t), || {
                        format!("{} on {:?}", l.label(x), lat.set(p))
                    });
                }
            }
            let t = lat.set(pn.t).clone();
            let ps = subgroups_of_locality(
                l,
                |g| n.contains(g),
                |h| FiniteGroup::is_p_group_order(h.len(), l.prime()),
                cap,
            );
            let ok = ps.is_some_and(|ps| !ps.iter().any(|h| t.is_subset(h) && *h != t));
            r.case("t-maximal-p-subgroup", ok, || format!("{n:?}"));
            match maximal_cosets(l, &pn) {
                Ok(cp) => {
                    r.merge("", check_cosets(l, &pn, &cp));
                    r.merge("", lift_words(l, &pn, &cp));
                }
                Err(e) => r.fail("maximal-cosets", format!("{e}")),
            }
        }
        if matches!(which, Suite::Frattini | Suite::All) {
            r.merge("", check_frattini(l, &pn));
        }
        if matches!(which, Suite::Splitting | Suite::All) {
            r.merge("", check_splitting(l, &pn));
        }
    }
    r
}

/// Replacing the letters of `u ∈ D`, `|u| ≤ 2`, by the representatives of
/// their cosets gives `v ∈ D` with `T S_u ≤ S_v` and `NΠ(u) ⊆ NΠ(v)`.
fn lift_words(l: &Locality, pn: &PartialNormal, cp: &crate::normal::CosetPartition) -> Report {
    let mut r = Report::new();
    let lat = l.lattice();
    let rep = |g: Elem| cp.reps[cp.block_of[g]];
    let mut words: Vec<Word> = l.elements().map(|g| alloc::vec![g]).collect();
    for a in l.elements() {
        for b in l.elements() {
            if l.mul(a, b).is_some() {
                words.push(alloc::vec![a, b]);
            }
        }
    }
    for u in words {
        let v: Word = u.iter().map(|&g| rep(g)).collect();
        let detail = || format!("{u:?}");
        let (Ok(su), Ok(sv)) = (l.s_w(&u), l.s_w(&v)) else {
            r.fail("lift-in-domain", detail());
            continue;
        };
        let pu = l.product_of(&u).unwrap();
        let pv = l.product_of(&v);
        r.case("lift-in-domain", l.is_object(sv) && pv.is_some(), detail);
        r.case("lift-enlarges-s_w", lat.le(lat.join(pn.t, su), sv), detail);
        r.case("lift-product-coset", pv.is_some_and(|pv| cp.block_of[pu] == cp.block_of[pv]), detail);
    }
    r
}

/// Quotients by every partial normal subgroup and the isomorphism theorem
/// for every nested pair.
pub fn quotient_suite(l: &Arc<Locality>, omega: &OmegaPoset, normals: &[ElemSet], max_len: usize) -> Report {
    let mut r = Report::new();
    let pns: Vec<PartialNormal> = normals
        .iter()
        .filter_map(|n| PartialNormal::new(l, omega, n.clone()).ok())
        .collect();
    r.case("partial-normals-built", pns.len() == normals.len(), String::new);
    for pn in &pns {
        r.merge("", check_quotient(l, pn, max_len));
        match quotient(l, pn) {
            Ok((q, proj)) => {
                match subgroup_correspondence(l, pn, &q, &proj) {
                    Ok(c) => r.merge("correspondence", c),
                    Err(e) => r.fail("correspondence", format!("{e}")),
                }
                let over: Vec<ElemSet> = normals.iter().filter(|m| pn.members.is_subset(m)).cloned().collect();
                match check_image_lemmas(l, pn, &q, &proj, &over, max_len.min(3)) {
                    Ok(c) => r.merge("images", c),
                    Err(e) => r.fail("images", format!("{e}")),
                }
            }
            Err(e) => r.fail("quotient-built", format!("{e}")),
        }
    }
    for n in &pns {
        for m in &pns {
            if n.members.is_subset(&m.members) {
                r.merge("first-isomorphism", check_first_isomorphism(l, n, m, max_len.min(3)));
            }
        }
    }
    r
}

/// Runs `which` on `l`, with partial normal subgroups enumerated once.
pub fn run_suite(l: &Arc<Locality>, which: Suite, max_len: usize) -> Report {
    let mut r = Report::new();
    let omega = compute_omega(l);
    let en = enumerate_partial_normals(l);
    if matches!(which, Suite::Axioms | Suite::All) {
        r.merge("validate", validate_locality(l));
        r.merge("axioms", axioms_suite(l, max_len));
    }
    if matches!(which, Suite::Sylow | Suite::All) {
        r.merge("structure", structure_suite(l, &omega, SUBGROUP_CAP));
    }
    if which != Suite::Axioms && which != Suite::Sylow {
        r.merge("normals", enumeration_checks(l, &en));
    }
    if matches!(which, Suite::Cosets | Suite::Frattini | Suite::Splitting | Suite::All) {
        r.merge("normal", normal_suite(l, &omega, &en.normals, which, SUBGROUP_CAP));
    }
    if matches!(which, Suite::Quotient | Suite::All) {
        r.merge("quotient", quotient_suite(l, &omega, &en.normals, max_len));
    }
    if matches!(which, Suite::Products | Suite::All) {
        r.merge("products", check_products(l, &en.normals));
    }
    r
}

/// Every enumerated set is partial normal; `1` and `L` are among them.
pub fn enumeration_checks(l: &Locality, en: &NormalEnumeration) -> Report {
    let mut r = Report::new();
    r.case("enumeration-complete", en.complete, String::new);
    r.case("closure-route-agrees", en.closure_agrees, String::new);
    for n in &en.normals {
        r.case("enumerated-partial-normal", is_partial_normal(l, n), || format!("{n:?}"));
    }
    r.case(
        "extremes-present",
        en.normals.contains(&l.set([0])) && en.normals.contains(&l.full()),
        String::new,
    );
    r
}

/// A catalog example by name with its full suite; `free1` runs the axioms
/// only.
pub fn run_catalog(name: &str, max_len: usize) -> Result<(Option<Arc<Locality>>, Report)> {
    if name == "free1" {
        let mut r = Report::new();
        r.merge("axioms", free_one_suite(max_len.max(8)));
        return Ok((None, r));
    }
    let l = Arc::new(catalog::locality(name)?);
    let r = run_suite(&l, Suite::All, max_len);
    Ok((Some(l), r))
}

/// Summary facts about a locality.
pub fn describe(l: &Locality, omega: &OmegaPoset) -> BTreeMap<&'static str, String> {
    let mut m = BTreeMap::new();
    m.insert("carrier", format!("{}", l.size()));
    m.insert("prime", format!("{}", l.prime()));
    m.insert("s-order", format!("{}", l.s().len()));
    m.insert("objects", format!("{}", l.objects().len()));
    m.insert("is-group", format!("{}", l.is_group()));
    m.insert("omega-size", format!("{}", omega.members.len()));
    m.insert("dimension", format!("{}", omega.dimension()));
    m
}
