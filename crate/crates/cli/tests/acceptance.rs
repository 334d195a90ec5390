//! One line per acceptance criterion. Each criterion combines the matching
//! law group with checks computed here, independently of the kernel.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use omegatt::computads::{counit_eval, typecheck, Cell};
use omegatt::corpus;
use omegatt::dimset::DimSet;
use omegatt::homcat::{hom_factor, hom_realize, is_indecomposable, op_hom_transport};
use omegatt::laws::{self, LawConfig, LawReport};
use omegatt::metaops::{op_cell, op_computad, op_double, suspend_cell, suspend_double};
use omegatt::name::Name;
use omegatt::oplib::{comp_cell, compose, eh_computad, identity_cell};
use omegatt::surface;
use omegatt::Tree;

struct Verdict {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn group(&mut self, report: &LawReport, id: &str) {
        match report.group(id) {
            Some(g) => {
                self.notes.push(format!("{} {} checks", g.id, g.checks));
                self.check(g.passed(), || g.to_string());
            }
            None => self.failures.push(format!("no law group `{id}`")),
        }
    }
}

fn var(s: &str, d: usize) -> Cell {
    Cell::var(Name::from(s), d)
}

/// Cells of the disk `D_j` as (dimension, side) with side 0 for the top cell.
fn disk_cells(j: usize) -> Vec<(usize, i8)> {
    let mut v: Vec<(usize, i8)> = (0..j).flat_map(|d| [(d, -1), (d, 1)]).collect();
    v.push((j, 0));
    v
}

/// Per-dimension cell counts of `D_n` glued to `D_m` along the target
/// `k`-boundary of the first and the source `k`-boundary of the second,
/// computed with an explicit union-find.
fn glued_counts(n: usize, k: usize, m: usize) -> Vec<usize> {
    let left = disk_cells(n);
    let right = disk_cells(m);
    let mut cells: Vec<(usize, usize, i8)> = Vec::new();
    cells.extend(left.iter().map(|&(d, s)| (0, d, s)));
    cells.extend(right.iter().map(|&(d, s)| (1, d, s)));
    let index: BTreeMap<(usize, usize, i8), usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    // D_k maps into the left disk by its target and into the right by its source.
    for (d, s) in disk_cells(k) {
        let (l, r) = if d == k { ((d, 1), (d, -1)) } else { ((d, s), (d, s)) };
        let l = if d == n { (d, 0) } else { l };
        let r = if d == m { (d, 0) } else { r };
        let (a, b) = (find(&mut parent, index[&(0, l.0, l.1)]), find(&mut parent, index[&(1, r.0, r.1)]));
        parent[a] = b;
    }
    let mut counts = vec![0; n.max(m) + 1];
    for (i, &(_, d, _)) in cells.iter().enumerate() {
        if find(&mut parent, i) == i {
            counts[d] += 1;
        }
    }
    counts
}

fn position_counts(t: &Tree) -> Vec<usize> {
    let mut counts = vec![0; t.dim() + 1];
    for p in t.positions() {
        counts[p.dim()] += 1;
    }
    counts
}

fn catalan(n: usize) -> usize {
    (0..n).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn criterion_1(cfg: &LawConfig) -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let g = laws::tree_laws(cfg);
    let took = start.elapsed();
    v.notes.push(format!("trees {} checks in {:.2?}", g.checks, took));
    v.check(g.passed(), || g.to_string());
    v.check(took < Duration::from_secs(60), || format!("tree laws took {took:.2?}"));
    let trees = Tree::enumerate(cfg.max_nodes);
    let want: usize = (1..=cfg.max_nodes).map(|n| catalan(n - 1)).sum();
    v.check(trees.len() == want, || format!("{} trees with at most {} nodes, want {want}", trees.len(), cfg.max_nodes));
    v
}

fn criterion_2(report: &LawReport) -> Verdict {
    let mut v = Verdict::new();
    v.group(report, "action");
    let cells = corpus::cells();
    v.notes.push(format!("corpus {} cells", cells.len()));
    v.check(cells.len() >= 50, || format!("corpus has only {} cells", cells.len()));
    for n in 1..=3 {
        for m in 1..=3 {
            for k in 0..n.min(m) {
                let c = comp_cell(n, k, m).unwrap();
                v.check(cells.iter().any(|s| s.cell == c), || format!("comp({n},{k},{m}) missing from the corpus"));
            }
        }
    }
    // Disks are fixed by every opposite; B(n,k,m) swaps its sides exactly
    // when k+1 is reversed.
    for w in DimSet::subsets_upto(4) {
        for n in 0..=4 {
            v.check(Tree::disk(n).op(&w) == Tree::disk(n), || format!("op{w}(D{n})"));
        }
        for n in 1..=4 {
            for m in 1..=4 {
                for k in 0..n.min(m) {
                    let want = if w.contains(k + 1) { Tree::comp(m, k, n) } else { Tree::comp(n, k, m) };
                    v.check(Tree::comp(n, k, m).unwrap().op(&w) == want.unwrap(), || format!("op{w}(B{n}{k}{m})"));
                }
            }
        }
    }
    for s in &cells {
        v.check(op_cell(&DimSet::empty(), &s.cell) == s.cell, || format!("op{{}}({})", s.label));
    }
    v
}

fn criterion_3(report: &LawReport) -> Verdict {
    let mut v = Verdict::new();
    v.group(report, "suspension");
    for n in 1..=3 {
        for m in 1..=3 {
            for k in 0..n.min(m) {
                let t = Tree::comp(n, k, m).unwrap();
                v.check(t.suspend() == Tree::comp(n + 1, k + 1, m + 1).unwrap(), || format!("susp B{n}{k}{m}"));
                let c = comp_cell(n, k, m).unwrap();
                v.check(suspend_cell(&c) == comp_cell(n + 1, k + 1, m + 1).unwrap(), || format!("susp comp({n},{k},{m})"));
            }
        }
    }
    v
}

fn criterion_4(report: &LawReport) -> Verdict {
    let mut v = Verdict::new();
    v.group(report, "pushout");
    let mut cases = 0;
    for n in 1..=4 {
        for m in 1..=4 {
            for k in 0..n.min(m) {
                cases += 1;
                let got = position_counts(&Tree::comp(n, k, m).unwrap());
                let want = glued_counts(n, k, m);
                v.check(got == want, || format!("B{n}{k}{m}: {got:?} positions, pushout has {want:?}"));
            }
        }
    }
    v.notes.push(format!("{cases} gluings"));
    v
}

fn criterion_5(report: &LawReport) -> Verdict {
    let mut v = Verdict::new();
    v.group(report, "typecheck");
    for (src, cell, code) in laws::negative_cases() {
        let free = omegatt::computads::free_computad(Tree::comp(1, 0, 1).unwrap().scheme().carrier());
        let got = typecheck(&free, &cell).err().map(|e| e.code());
        v.check(got == Some(code), || format!("{src}: got {got:?}, want {code}"));
        let parsed = surface::load(&format!("let bad = {src}")).err().map(|e| e.code());
        v.check(parsed == Some(code), || format!("surface {src}: got {parsed:?}, want {code}"));
    }
    let eh = eh_computad().computad;
    let x = var("x", 0);
    v.check(typecheck(&eh, &identity_cell(&eh, &x).unwrap()).is_ok(), || "id x".into());
    v
}

fn criterion_6(report: &LawReport, depth: usize) -> Verdict {
    let mut v = Verdict::new();
    v.group(report, "hom");
    let bc = eh_computad();
    let loops = corpus::eh_loops(depth);
    v.notes.push(format!("{} loops", loops.len()));
    for (_, c) in &loops {
        match hom_factor(&bc, c) {
            Ok(h) => {
                v.check(hom_realize(&bc, &h).as_ref() == Ok(c), || format!("realize(factor({c}))"));
                v.check(hom_factor(&bc, &hom_realize(&bc, &h).unwrap()).as_ref() == Ok(&h), || format!("factor(realize) at {c}"));
            }
            Err(e) => v.failures.push(format!("factor {c}: {e}")),
        }
    }
    let idx = identity_cell(&bc.computad, &var("x", 0)).unwrap();
    v.check(is_indecomposable(&bc, &idx) == Ok(true), || "id x should be indecomposable".into());
    let (a, b) = (var("a", 2), var("b", 2));
    let vertical = compose(&bc.computad, &a, 1, &b).unwrap();
    v.check(is_indecomposable(&bc, &vertical) == Ok(false), || "comp1(a,b) is a suspension image".into());
    let ida = identity_cell(&bc.computad, &a).unwrap();
    v.check(is_indecomposable(&bc, &ida) == Ok(false), || "id a is a suspension image".into());
    v
}

fn criterion_7(report: &LawReport) -> Verdict {
    let mut v = Verdict::new();
    v.group(report, "ophom");
    let bc = eh_computad();
    for (_, c) in corpus::eh_loops(2) {
        for w in DimSet::subsets_upto(3) {
            match op_hom_transport(&w, &bc, &c) {
                Ok(t) => v.check(t.holds(), || format!("op{w} at {c}: {}", t.diff().unwrap_or_default())),
                Err(e) => v.failures.push(format!("op{w} at {c}: {e}")),
            }
        }
    }
    v
}

fn criterion_8(report: &LawReport) -> Verdict {
    let mut v = Verdict::new();
    v.group(report, "eh");
    let ceh = eh_computad().computad;
    let (a, b) = (var("a", 2), var("b", 2));
    let c0 = |l: &Cell, r: &Cell| compose(&ceh, l, 0, r).unwrap();
    let c1 = |l: &Cell, r: &Cell| compose(&ceh, l, 1, r).unwrap();
    v.check(op_cell(&DimSet::of(&[1]), &c0(&a, &b)) == c0(&b, &a), || "op1(comp0(a,b)) = comp0(b,a)".into());
    v.check(op_cell(&DimSet::of(&[2]), &c1(&a, &b)) == c1(&b, &a), || "op2(comp1(a,b)) = comp1(b,a)".into());
    for w in DimSet::subsets_upto(3) {
        v.check(op_computad(&w, &ceh) == ceh, || format!("op{w}(Ceh) = Ceh"));
    }
    let src = "computad Ceh { x : * ; a : id(x) -> id(x) ; b : id(x) -> id(x) }";
    let parsed = surface::load(src).map(|p| p.computads().next().map(|(_, c)| (**c).clone()));
    v.check(parsed == Ok(Some(ceh)), || "surface declaration of Ceh".into());
    v
}

fn criterion_9(report: &LawReport) -> Verdict {
    let mut v = Verdict::new();
    v.group(report, "counit");
    let doubles = corpus::double_cells();
    v.notes.push(format!("{} double cells", doubles.len()));
    v.check(doubles.len() >= 20, || format!("only {} double cells", doubles.len()));
    for (_, d) in &doubles {
        let e = counit_eval(d);
        v.check(counit_eval(&suspend_double(d)) == suspend_cell(&e), || format!("susp square at {d}"));
        for w in DimSet::subsets_upto(3) {
            v.check(counit_eval(&op_double(&w, d)) == op_cell(&w, &e), || format!("op{w} square at {d}"));
        }
    }
    v
}

fn criterion_10(laws_time: Duration) -> Verdict {
    let mut v = Verdict::new();
    for c in common::CASES {
        v.failures.extend(common::check_case(c));
    }
    v.notes.push(format!("{} golden files", common::CASES.len()));
    let start = Instant::now();
    let r = common::run(&["laws"]);
    let took = start.elapsed();
    v.notes.push(format!("cli laws run {took:.2?}, harness run {laws_time:.2?}"));
    v.check(r.exit == 0, || format!("laws exited {}: {}", r.exit, r.stderr));
    v.check(r.stdout.trim_end().lines().last().is_some_and(|l| l.starts_with("all ") && l.ends_with(" checks passed")), || {
        "laws output does not end with the summary".into()
    });
    v.check(took < Duration::from_secs(300), || format!("laws took {took:.2?}"));
    v
}

fn main() -> ExitCode {
    let cfg = LawConfig::default();
    let start = Instant::now();
    let report = laws::run_all(&cfg);
    let laws_time = start.elapsed();
    type Criterion<'a> = (usize, &'a str, Box<dyn Fn() -> Verdict + 'a>);
    let verdicts: Vec<Criterion> = vec![
        (1, "tree laws", Box::new(|| criterion_1(&cfg))),
        (2, "opposite group action", Box::new(|| criterion_2(&report))),
        (3, "suspension laws", Box::new(|| criterion_3(&report))),
        (4, "pushout counts", Box::new(|| criterion_4(&report))),
        (5, "typechecker", Box::new(|| criterion_5(&report))),
        (6, "hom freeness", Box::new(|| criterion_6(&report, cfg.loop_depth))),
        (7, "opposite/hom commutation", Box::new(|| criterion_7(&report))),
        (8, "Eckmann-Hilton identities", Box::new(|| criterion_8(&report))),
        (9, "counit squares", Box::new(|| criterion_9(&report))),
        (10, "CLI golden files and laws runtime", Box::new(|| criterion_10(laws_time))),
    ];
    let mut failed = 0;
    for (n, title, f) in verdicts {
        let v = f();
        let status = if v.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {n}: {status} {title} ({})", v.notes.join(", "));
        for m in v.failures.iter().take(8) {
            println!("    {m}");
        }
        if !v.failures.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
