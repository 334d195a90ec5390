//! Exhaustive law checks over enumerated trees and the sample corpora.

use std::collections::BTreeSet;
use std::fmt;

use crate::computads::{
    apply_morphism, boundary, src_k, support, tgt_k, typecheck, Cell, Computad, FreeOnCells,
    PastingContext, Sphere, Substitution,
};
use crate::corpus::{self, Sample};
use crate::dimset::DimSet;
use crate::globular::{disk, is_morphism, suspend, suspended_name};
use crate::homcat::{
    hom_factor, hom_realize, is_indecomposable, is_loop_cell, op_hom_transport, HomSignature,
};
use crate::metaops::{
    desuspend_cell, minus, op_bipointed, op_cell, op_computad, op_double, op_morphism, op_sphere,
    plus, suspend_cell, suspend_computad, suspend_double, suspend_sphere,
};
use crate::computads::{counit_eval, free_computad, BipointedComputad};
use crate::name::Name;
use crate::oplib::{comp_cell, compose, eh_computad, identity_cell};
use crate::trees::{
    compose_maps, invert, op_positions_iso, src_inclusion, tgt_inclusion, to_name_map, Tree,
};

/// Bounds for the enumerated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawConfig {
    /// Trees are enumerated up to this many nodes.
    pub max_nodes: usize,
    /// Opposites range over all subsets of `{1, ..., dims_upto}`.
    pub dims_upto: usize,
    /// Depth of the Eckmann-Hilton loop corpus.
    pub loop_depth: usize,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig { max_nodes: 5, dims_upto: 3, loop_depth: 3 }
    }
}

const MAX_REPORTED: usize = 8;

/// Outcome of one family of laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawGroup {
    pub id: &'static str,
    pub title: &'static str,
    pub checks: usize,
    pub failed: usize,
    /// The first few failure descriptions.
    pub failures: Vec<String>,
}

impl LawGroup {
    fn new(id: &'static str, title: &'static str) -> Self {
        LawGroup { id, title, checks: 0, failed: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(what());
            }
        }
    }

    fn same<T: PartialEq + fmt::Display>(&mut self, got: &T, want: &T, what: impl FnOnce() -> String) {
        self.check(got == want, || format!("{}: got {got}, want {want}", what()));
    }

    fn ok<T, E: fmt::Display>(&mut self, r: Result<T, E>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(x) => {
                self.check(true, String::new);
                Some(x)
            }
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for LawGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: {} checks passed", self.title, self.checks)
        } else {
            write!(f, "{}: {} of {} checks failed", self.title, self.failed, self.checks)?;
            for m in &self.failures {
                write!(f, "\n  {m}")?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub groups: Vec<LawGroup>,
}

impl LawReport {
    pub fn checks(&self) -> usize {
        self.groups.iter().map(|g| g.checks).sum()
    }

    pub fn failed(&self) -> usize {
        self.groups.iter().map(|g| g.failed).sum()
    }

    pub fn passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn group(&self, id: &str) -> Option<&LawGroup> {
        self.groups.iter().find(|g| g.id == id)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.groups {
            writeln!(f, "{g}")?;
        }
        if self.passed() {
            write!(f, "all {} checks passed", self.checks())
        } else {
            write!(f, "{} of {} checks failed", self.failed(), self.checks())
        }
    }
}

/// Every group, in a fixed order.
pub fn run_all(cfg: &LawConfig) -> LawReport {
    let groups = vec![
        tree_laws(cfg),
        group_action(cfg),
        suspension_laws(cfg),
        pushout_counts(cfg),
        typechecking(cfg),
        hom_freeness(cfg),
        op_hom(cfg),
        eh_identities(cfg),
        counit_squares(cfg),
        opposite_laws(cfg),
    ];
    LawReport { groups }
}

fn subsets(cfg: &LawConfig) -> Vec<DimSet> {
    DimSet::subsets_upto(cfg.dims_upto)
}

/// Opposites commute with boundaries; boundary inclusions transport along
/// the position isomorphisms, swapping when `k + 1` is in `w`; the position
/// isomorphism is a bipointed morphism.
pub fn tree_laws(cfg: &LawConfig) -> LawGroup {
    let mut g = LawGroup::new("trees", "tree laws");
    for b in Tree::enumerate(cfg.max_nodes) {
        for w in subsets(cfg) {
            let ob = b.op(&w);
            let iso_b = op_positions_iso(&w, &b);
            let target = b.scheme().scheme.op(&w);
            let src_scheme = ob.scheme().scheme;
            let f = to_name_map(&iso_b);
            g.check(
                is_morphism(&f, &src_scheme.carrier, &target.carrier)
                    && f.get(&src_scheme.base_minus) == Some(&target.base_minus)
                    && f.get(&src_scheme.base_plus) == Some(&target.base_plus),
                || format!("op^B is not a bipointed morphism for B = {b}, w = {w}"),
            );
            for k in 0..=b.dim() {
                let bk = b.boundary(k);
                g.same(&bk.op(&w), &ob.boundary(k), || format!("op d_{k} for B = {b}, w = {w}"));
                let iso_bk = op_positions_iso(&w, &bk);
                let (s, t) = (src_inclusion(k, &b), tgt_inclusion(k, &b));
                let (os, ot) = (src_inclusion(k, &ob), tgt_inclusion(k, &ob));
                let (for_s, for_t) = if w.contains(k + 1) { (&t, &s) } else { (&s, &t) };
                g.check(compose_maps(&iso_bk, for_s) == compose_maps(&os, &iso_b), || {
                    format!("source inclusion equation, B = {b}, k = {k}, w = {w}")
                });
                g.check(compose_maps(&iso_bk, for_t) == compose_maps(&ot, &iso_b), || {
                    format!("target inclusion equation, B = {b}, k = {k}, w = {w}")
                });
            }
        }
    }
    g
}

fn distinct_homes(samples: &[Sample]) -> Vec<Computad> {
    let mut out: Vec<Computad> = Vec::new();
    for s in samples {
        if !out.contains(&s.home) {
            out.push((*s.home).clone());
        }
    }
    out.push(eh_computad().computad);
    out
}

/// `op_∅ = id` and `op_w op_w' = op_{w Δ w'}` on trees, position
/// isomorphisms, pasting schemes, computads and cells.
pub fn group_action(cfg: &LawConfig) -> LawGroup {
    let mut g = LawGroup::new("action", "opposite group action");
    let ws = subsets(cfg);
    let e = DimSet::empty();
    for b in Tree::enumerate(cfg.max_nodes) {
        let ps = b.scheme().scheme;
        g.same(&b.op(&e), &b, || "op_{} on a tree".into());
        g.check(ps.op(&e) == ps, || format!("op_{{}} on Pos({b})"));
        g.check(op_positions_iso(&e, &b).iter().all(|(p, q)| p == q), || {
            format!("op^B for w = {{}} is not the identity, B = {b}")
        });
        for w in &ws {
            for w2 in &ws {
                let ww = w.compose(w2);
                g.same(&b.op(w2).op(w), &b.op(&ww), || format!("op_{w} op_{w2} on {b}"));
                g.check(ps.op(w2).op(w) == ps.op(&ww), || format!("op_{w} op_{w2} on Pos({b})"));
                let lhs = compose_maps(&op_positions_iso(w, &b.op(w2)), &op_positions_iso(w2, &b));
                g.check(lhs == op_positions_iso(&ww, &b), || {
                    format!("op^B composite law, B = {b}, w = {w}, w' = {w2}")
                });
            }
        }
    }
    let cells = corpus::cells();
    for c in distinct_homes(&cells) {
        g.check(op_computad(&e, &c) == c, || "op_{} on a computad".into());
        for w in &ws {
            for w2 in &ws {
                g.check(op_computad(w, &op_computad(w2, &c)) == op_computad(&w.compose(w2), &c), || {
                    format!("op_{w} op_{w2} on a computad")
                });
            }
        }
    }
    for s in &cells {
        g.same(&op_cell(&e, &s.cell), &s.cell, || format!("op_{{}} on {}", s.label));
        for w in &ws {
            for w2 in &ws {
                let lhs = op_cell(w, &op_cell(w2, &s.cell));
                g.same(&lhs, &op_cell(&w.compose(w2), &s.cell), || {
                    format!("op_{w} op_{w2} on {}", s.label)
                });
            }
        }
    }
    g
}

/// Suspension of templates, desuspension, supports and boundaries.
pub fn suspension_laws(cfg: &LawConfig) -> LawGroup {
    let mut g = LawGroup::new("suspension", "suspension laws");
    for n in 1..=3 {
        for m in 1..=3 {
            for k in 0..n.min(m) {
                let t = Tree::comp(n, k, m).unwrap();
                g.same(&t.suspend(), &Tree::comp(n + 1, k + 1, m + 1).unwrap(), || {
                    format!("suspended tree of comp({n},{k},{m})")
                });
                let c = comp_cell(n, k, m).unwrap();
                g.same(&suspend_cell(&c), &comp_cell(n + 1, k + 1, m + 1).unwrap(), || {
                    format!("suspended comp({n},{k},{m})")
                });
            }
        }
    }
    for b in Tree::enumerate(cfg.max_nodes) {
        g.check(suspend(b.scheme().carrier()) == b.suspend().scheme().scheme, || {
            format!("suspended positions of {b}")
        });
    }
    for s in &corpus::cells() {
        let sc = suspend_cell(&s.cell);
        g.check(desuspend_cell(&sc).as_ref() == Ok(&s.cell), || format!("desuspend(suspend {})", s.label));
        let home = suspend_computad(&s.home).computad;
        if let (Some(lhs), Some(rhs)) = (
            g.ok(support(&home, &sc), || format!("support of suspended {}", s.label)),
            g.ok(support(s.home.as_ref(), &s.cell), || format!("support of {}", s.label)),
        ) {
            let mut want: BTreeSet<Name> = rhs.iter().map(suspended_name).collect();
            want.extend([minus(), plus()]);
            g.check(lhs == want, || format!("support of suspended {}", s.label));
        }
        if s.cell.dim() > 0 {
            let lhs = boundary(&home, &sc).ok();
            let rhs = boundary(s.home.as_ref(), &s.cell).ok().map(|b| suspend_sphere(&b));
            g.check(lhs.is_some() && lhs == rhs, || format!("boundary of suspended {}", s.label));
        }
    }
    g.check(desuspend_cell(&comp_cell(2, 1, 2).unwrap()).ok() == comp_cell(1, 0, 1).ok(), || {
        "desuspend comp(2,1,2)".into()
    });
    g
}

/// The disk-pushout count of positions of `comp(n,k,m)` in dimension `d`.
pub fn pushout_count(n: usize, k: usize, m: usize, d: usize) -> usize {
    let b = |x: bool| x as usize;
    b(d <= n) + b(d <= m) + b(d < n) + b(d < m) - 2 * b(d < k) - b(d == k)
}

pub fn pushout_counts(_cfg: &LawConfig) -> LawGroup {
    let mut g = LawGroup::new("pushout", "pushout counts");
    for n in 1..=4 {
        for m in 1..=4 {
            for k in 0..n.min(m) {
                let t = Tree::comp(n, k, m).unwrap();
                let got = t.scheme().carrier().cell_counts();
                let want: Vec<usize> = (0..=n.max(m)).map(|d| pushout_count(n, k, m, d)).collect();
                g.check(got == want, || format!("comp({n},{k},{m}): got {got:?}, want {want:?}"));
            }
        }
    }
    g
}

/// The seeded ill-typed coherences: a non-full sphere and a non-parallel one.
pub fn negative_cases() -> Vec<(&'static str, Cell, &'static str)> {
    let t = Tree::comp(1, 0, 1).unwrap();
    let v = |s: &str, d| Cell::var(Name::from(s), d);
    let id = Substitution::identity(&t);
    vec![
        ("coh [[],[]] {0 -> 1} []", Cell::coh(t.clone(), Sphere::new(v("0", 0), v("1", 0)), id.clone()), "NotFull"),
        ("coh [[],[]] {1.0 -> 2.0} []", Cell::coh(t, Sphere::new(v("1.0", 1), v("2.0", 1)), id), "NotParallel"),
    ]
}

/// Templates, identities, attachments, and every suspended or opposite
/// corpus cell typecheck; the seeded negative cases are rejected.
pub fn typechecking(cfg: &LawConfig) -> LawGroup {
    let mut g = LawGroup::new("typecheck", "typechecker");
    for n in 1..=4 {
        for m in 1..=4 {
            for k in 0..n.min(m) {
                let t = Tree::comp(n, k, m).unwrap();
                let r = comp_cell(n, k, m).map_err(|e| e.to_string()).and_then(|c| {
                    typecheck(&PastingContext(&t), &c).map_err(|e| e.to_string())
                });
                g.check(r == Ok(n.max(m)), || format!("comp({n},{k},{m}) typechecks: {r:?}"));
            }
        }
    }
    g.ok(eh_computad().computad.checked(), || "Eckmann-Hilton attachments".into());
    for s in &corpus::cells() {
        let home = s.home.as_ref();
        if let Some(i) = g.ok(identity_cell(home, &s.cell), || format!("identity on {}", s.label)) {
            g.ok(typecheck(home, &i), || format!("identity on {}", s.label));
        }
        let sh = suspend_computad(home).computad;
        g.ok(typecheck(&sh, &suspend_cell(&s.cell)), || format!("suspended {}", s.label));
        for w in subsets(cfg) {
            let oh = op_computad(&w, home);
            g.ok(typecheck(&oh, &op_cell(&w, &s.cell)), || format!("op_{w} {}", s.label));
        }
    }
    let free = free_computad(Tree::comp(1, 0, 1).unwrap().scheme().carrier());
    for (src, c, code) in negative_cases() {
        let got = typecheck(&free, &c).err().map(|e| e.code());
        g.check(got == Some(code), || format!("`{src}` should fail with {code}, got {got:?}"));
    }
    g
}

fn loops(cfg: &LawConfig) -> Vec<Cell> {
    corpus::eh_loops(cfg.loop_depth).into_iter().map(|(_, c)| c).collect()
}

/// `hom_realize` and `hom_factor` are inverse; indecomposability of
/// identities and suspension images; hom of a suspension.
pub fn hom_freeness(cfg: &LawConfig) -> LawGroup {
    let mut g = LawGroup::new("hom", "hom freeness");
    let eh = eh_computad();
    let hs = HomSignature(&eh);
    for c in loops(cfg) {
        g.check(is_loop_cell(&eh, &c) == Ok(true), || format!("{c} is a loop"));
        let Some(h) = g.ok(hom_factor(&eh, &c), || format!("factor {c}")) else { continue };
        g.check(hom_realize(&eh, &h).as_ref() == Ok(&c), || format!("realize(factor {c})"));
        g.check(typecheck(&hs, &h) == Ok(c.dim() - 1), || format!("factor {c} typechecks one dimension down"));
        let gen = matches!(h, Cell::Var { .. });
        g.check(is_indecomposable(&eh, &c) == Ok(gen), || format!("{c}: generator iff indecomposable"));
        if c.dim() >= 2 {
            let want = boundary(&eh.computad, &c)
                .ok()
                .and_then(|b| Some(Sphere::new(hom_factor(&eh, &b.src).ok()?, hom_factor(&eh, &b.tgt).ok()?)));
            g.check(want.is_some() && boundary(&hs, &h).ok() == want, || format!("boundary of factor {c}"));
        }
    }
    for h in corpus::hom_cells() {
        let back = hom_realize(&eh, &h).and_then(|c| hom_factor(&eh, &c));
        g.check(back.as_ref() == Ok(&h), || format!("factor(realize {h})"));
    }
    let point = BipointedComputad::new(free_computad(&disk(0)), Name::from("0"), Name::from("0")).unwrap();
    let idx = identity_cell(&point.computad, &Cell::var(Name::from("0"), 0)).unwrap();
    g.check(is_indecomposable(&point, &idx) == Ok(true), || "id x is indecomposable".into());
    for s in &corpus::cells() {
        let sh = suspend_computad(&s.home);
        let sc = suspend_cell(&s.cell);
        if matches!(s.cell, Cell::Coh(_)) {
            g.check(is_indecomposable(&sh, &sc) == Ok(false), || format!("suspended {} is decomposable", s.label));
        }
        let back = hom_factor(&sh, &sc).map(|h| h.map_leaves(&mut |x| desuspend_cell(&x.0).ok().and_then(|v| v.as_var().cloned()).unwrap_or_else(|| Name::from("?"))));
        g.check(back.as_ref() == Ok(&s.cell), || format!("hom of suspended {}", s.label));
    }
    g
}

/// Hom commutes with opposites on the loop corpus.
pub fn op_hom(cfg: &LawConfig) -> LawGroup {
    let mut g = LawGroup::new("ophom", "opposite/hom commutation");
    let eh = eh_computad();
    for c in loops(cfg) {
        for w in subsets(cfg) {
            match op_hom_transport(&w, &eh, &c) {
                Ok(v) => g.check(v.holds(), || format!("w = {w}, c = {c}\n  {}", v.diff().unwrap_or_default())),
                Err(e) => g.check(false, || format!("w = {w}, c = {c}: {e}")),
            }
        }
    }
    g
}

/// The composites of the Eckmann-Hilton computad under opposites, and its
/// self-duality.
pub fn eh_identities(cfg: &LawConfig) -> LawGroup {
    let mut g = LawGroup::new("eh", "Eckmann-Hilton identities");
    let eh = eh_computad();
    let c = &eh.computad;
    let (a, b) = (c.var("a").unwrap(), c.var("b").unwrap());
    for (k, w) in [(0, DimSet::of(&[1])), (1, DimSet::of(&[2]))] {
        let lhs = compose(c, &a, k, &b).map(|x| op_cell(&w, &x)).ok();
        let rhs = compose(c, &b, k, &a).ok();
        g.check(lhs.is_some() && lhs == rhs, || format!("op_{w} comp_{k}(a,b) = comp_{k}(b,a)"));
    }
    for w in subsets(cfg) {
        g.check(op_computad(&w, c) == *c, || format!("op_{w} of the Eckmann-Hilton computad"));
        g.check(op_bipointed(&w, &eh) == eh, || format!("op_{w} of the pointed Eckmann-Hilton computad"));
    }
    let mut s = eh.clone();
    for n in 1..=3 {
        s = suspend_computad(&s.computad);
        g.same(&s.computad.generators_of_dim(n + 2).count(), &2, || format!("{n}-fold suspension"));
    }
    g
}

/// Counit squares against suspension and opposites on double cells.
pub fn counit_squares(cfg: &LawConfig) -> LawGroup {
    let mut g = LawGroup::new("counit", "counit squares");
    for (home, d) in corpus::double_cells() {
        let sig = FreeOnCells(home.as_ref());
        g.ok(typecheck(&sig, &d), || format!("double cell {d}"));
        let e = counit_eval(&d);
        g.ok(typecheck(home.as_ref(), &e), || format!("counit of {d}"));
        g.same(&suspend_cell(&e), &counit_eval(&suspend_double(&d)), || format!("suspension square on {d}"));
        for w in subsets(cfg) {
            g.same(&op_cell(&w, &e), &counit_eval(&op_double(&w, &d)), || format!("op_{w} square on {d}"));
        }
    }
    g
}

/// Template opposites, compatibility with suspension, boundaries, supports
/// and naturality.
pub fn opposite_laws(cfg: &LawConfig) -> LawGroup {
    let mut g = LawGroup::new("opposite", "opposite laws");
    let ws = subsets(cfg);
    for n in 1..=3 {
        for m in 1..=3 {
            for k in 0..n.min(m) {
                let c = comp_cell(n, k, m).unwrap();
                let t = Tree::comp(n, k, m).unwrap();
                for w in &ws {
                    let (n2, m2) = if w.contains(k + 1) { (m, n) } else { (n, m) };
                    g.same(&t.op(w), &Tree::comp(n2, k, m2).unwrap(), || format!("op_{w} comp_tree({n},{k},{m})"));
                    let back = to_name_map(&invert(&op_positions_iso(w, &t)));
                    let o = op_cell(w, &c).map_leaves(&mut |v| back[v].clone());
                    g.same(&o, &comp_cell(n2, k, m2).unwrap(), || format!("op_{w} comp({n},{k},{m})"));
                }
            }
        }
    }
    let swap = |v: &Name| match v.as_str() {
        "0" => plus(),
        "1" => minus(),
        _ => v.clone(),
    };
    for s in &corpus::cells() {
        let sc = suspend_cell(&s.cell);
        for w in &ws {
            let rhs = suspend_cell(&op_cell(&w.minus_one(), &s.cell));
            let rhs = if w.contains(1) { rhs.map_leaves(&mut |v| swap(v)) } else { rhs };
            g.same(&op_cell(w, &sc), &rhs, || format!("op_{w} of suspended {}", s.label));
            let oh = op_computad(w, &s.home);
            let oc = op_cell(w, &s.cell);
            g.check(support(&oh, &oc).ok() == support(s.home.as_ref(), &s.cell).ok(), || {
                format!("support of op_{w} {}", s.label)
            });
            if s.cell.dim() > 0 {
                let want = boundary(s.home.as_ref(), &s.cell).ok().map(|b| op_sphere(w, &b));
                g.check(want.is_some() && boundary(&oh, &oc).ok() == want, || {
                    format!("boundary of op_{w} {}", s.label)
                });
            }
            if let Cell::Coh(coh) = &s.cell {
                let generic = Cell::coh(coh.tree.clone(), coh.sphere.clone(), Substitution::identity(&coh.tree));
                let lhs = apply_morphism(&op_morphism(w, &coh.sub), &op_cell(w, &generic)).ok();
                g.check(lhs.as_ref() == Some(&oc), || format!("naturality of op_{w} on {}", s.label));
            }
        }
    }
    let eh = eh_computad();
    let c = &eh.computad;
    let pairs: Vec<Cell> = corpus::eh_loops(1).into_iter().map(|(_, x)| x).collect();
    for u in &pairs {
        for v in &pairs {
            for k in 0..u.dim().min(v.dim()) {
                if tgt_k(c, u, k).ok() != src_k(c, v, k).ok() {
                    continue;
                }
                let uv = compose(c, u, k, v).unwrap();
                for w in &ws {
                    let (ou, ov) = (op_cell(w, u), op_cell(w, v));
                    let oc = op_computad(w, c);
                    let rhs = if w.contains(k + 1) { compose(&oc, &ov, k, &ou) } else { compose(&oc, &ou, k, &ov) };
                    g.check(rhs.as_ref().ok() == Some(&op_cell(w, &uv)), || {
                        format!("op_{w} comp_{k}({u}, {v})")
                    });
                }
            }
        }
    }
    g
}
