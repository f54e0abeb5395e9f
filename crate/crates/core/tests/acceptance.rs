//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Tolerances are pinned as constants below.

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use lcpindex::batch::{check_pairs, sample_ranks};
use lcpindex::metrics::Summary;
use lcpindex::oracle::{naive_search, naive_suffix_array, naive_suffix_tree, trees_isomorphic, ParentTree, DEFAULT_LIMIT};
use lcpindex::string_set::Lookup;
use lcpindex::{
    AvlTree, DsLcpList, DynamicLca, Error, FlySession, LcaNode, ListHandle, Neighbor, OrderedContainer, StringSet,
    SuffixIndex, SuffixTree, Symbol, Termination, Treap,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_TEXTS: usize = 200;
const ORACLE_MAX_LEN: usize = 2000;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);

const LIFO_SCRIPTS: usize = 60;
const LIFO_OPS: usize = 500;
const LIFO_BUDGET: Duration = Duration::from_secs(120);

const RMQ_OPS: usize = 100_000;

const FLY_SESSIONS: usize = 10_000;

const QUERY_SIZES: [u32; 3] = [10, 13, 16];
const QUERY_C1_MAX: f64 = 3.0;
const QUERY_C2_DRIFT: f64 = 2.0;

const UPDATE_SMALL: u32 = 12;
const UPDATE_LARGE: u32 = 20;
const UPDATE_RATIO_MAX: f64 = 20.0 / 12.0 + 0.5;

const SORT_LEN: usize = 1_000_000;
const SORT_PAIRS: usize = 1000;
const SORT_BUDGET: Duration = Duration::from_secs(30);

const LCA_OPS: usize = 100_000;
const LCA_MAX_LIVE: usize = 2000;

const AUDIT_PERIOD: usize = 1000;

static AUDITS: AtomicU64 = AtomicU64::new(0);
static VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// Records one structural audit for the final tally.
fn audit(found: Vec<String>) {
    AUDITS.fetch_add(1, AtomicOrdering::Relaxed);
    if !found.is_empty() {
        eprintln!("audit violations: {:?}", &found[..found.len().min(5)]);
        VIOLATIONS.fetch_add(found.len() as u64, AtomicOrdering::Relaxed);
    }
}

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sym(b: u8) -> Symbol {
    Symbol::from_byte(b)
}

fn random_text(rng: &mut ChaCha8Rng, n: usize, sigma: u32) -> Vec<Symbol> {
    (0..n).map(|_| Symbol(1 + rng.gen_range(0..sigma))).collect()
}

fn fibonacci_word(n: usize) -> Vec<Symbol> {
    let (mut a, mut b) = (vec![sym(b'a')], vec![sym(b'a'), sym(b'b')]);
    while b.len() < n {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = b;
        b = next;
    }
    b.truncate(n);
    b
}

fn workload(kind: &str, n: usize, rng: &mut ChaCha8Rng) -> Vec<Symbol> {
    match kind {
        "a^n" => vec![sym(b'a'); n],
        "(ab)^n" => (0..n).map(|i| sym(b"ab"[i % 2])).collect(),
        "fibonacci" => fibonacci_word(n),
        _ => random_text(rng, n, 256),
    }
}

// 1 ------------------------------------------------------------------------

fn oracle_equality() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sigmas = [1u32, 2, 4, 26, 256];
    for i in 0..ORACLE_TEXTS {
        let sigma = sigmas[i % sigmas.len()];
        let n = rng.gen_range(0..=ORACLE_MAX_LEN);
        let text = random_text(&mut rng, n, sigma);
        let want = naive_suffix_array(&text, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
        let idx: SuffixIndex = SuffixIndex::build(&text).map_err(|e| e.to_string())?;
        ensure(idx.dump_suffix_array() == want, || format!("index differs: text #{i}, sigma {sigma}, n {n}"))?;
        let tree: SuffixTree<Treap> = SuffixTree::build(&text).map_err(|e| e.to_string())?;
        ensure(tree.dump_suffix_array() == want, || format!("tree differs: text #{i}, sigma {sigma}, n {n}"))?;
    }
    let t = start.elapsed();
    ensure(t < ORACLE_BUDGET, || format!("took {t:.1?}"))?;
    Ok(format!("{ORACLE_TEXTS} texts, index and tree exact, {t:.1?}"))
}

// 2 ------------------------------------------------------------------------

fn lifo_script<C: OrderedContainer>(source: &[Symbol], seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tree = SuffixTree::<C>::with_options(seed, 8);
    for op in 0..LIFO_OPS {
        let n = tree.text().user_len();
        if n > 0 && (n == source.len() || rng.gen_bool(0.3)) {
            tree.contract_front().map_err(|e| e.to_string())?;
        } else {
            // The text is always a suffix of `source`.
            tree.extend_front(source[source.len() - 1 - n]).map_err(|e| e.to_string())?;
        }
        let text = tree.text().to_symbols();
        let want = naive_suffix_tree(&text, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
        ensure(trees_isomorphic(&tree.to_ref_tree(), &want), || {
            format!("op {op}: tree differs from reference (len {})", text.len())
        })?;
        if op % 50 == 0 {
            audit(tree.validate_tree());
        }
    }
    Ok(())
}

fn lifo_scripts() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let kinds = ["random2", "random4", "a^n", "(ab)^n", "fibonacci", "random1"];
    for i in 0..LIFO_SCRIPTS {
        let kind = kinds[i % kinds.len()];
        let source = match kind {
            "random1" => random_text(&mut rng, LIFO_OPS, 1),
            "random2" => random_text(&mut rng, LIFO_OPS, 2),
            "random4" => random_text(&mut rng, LIFO_OPS, 4),
            k => workload(k, LIFO_OPS, &mut rng),
        };
        let r = if i % 2 == 0 {
            lifo_script::<AvlTree>(&source, i as u64)
        } else {
            lifo_script::<Treap>(&source, i as u64)
        };
        r.map_err(|e| format!("script {i} ({kind}): {e}"))?;
    }
    let t = start.elapsed();
    ensure(t < LIFO_BUDGET, || format!("took {t:.1?}"))?;
    Ok(format!("{LIFO_SCRIPTS} scripts x {LIFO_OPS} ops, isomorphic after every op, {t:.1?}"))
}

// 3 ------------------------------------------------------------------------

fn monotone_rmq() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut list: DsLcpList<u32> = DsLcpList::new();
    // Naive mirror: handles in order and the adjacent entries (value, witness).
    let mut hs: Vec<ListHandle> = Vec::new();
    let mut entries: Vec<(usize, u32)> = Vec::new();
    let mut wid = 0u32;
    let (mut queries, mut injected) = (0u64, 0u64);
    for op in 0..RMQ_OPS {
        let n = hs.len();
        // Drift between growth and shrinkage so sizes sweep up and down.
        let grow_p = if (op / 20_000) % 2 == 0 { 0.65 } else { 0.4 };
        if n < 4 || rng.gen_bool(grow_p) {
            let pos = rng.gen_range(0..=n);
            let (lp, ls) = if pos == 0 || pos == n {
                (rng.gen_range(0..30), rng.gen_range(0..30))
            } else {
                let e = entries[pos - 1].0;
                let other = e + rng.gen_range(0..5);
                if rng.gen_bool(0.5) {
                    (e, other)
                } else {
                    (other, e)
                }
            };
            if pos > 0 && pos < n && rng.gen_bool(0.02) {
                let e = entries[pos - 1].0;
                let r = list.insert(
                    Some(Neighbor::new(hs[pos - 1], e + 1, 0)),
                    Some(Neighbor::new(hs[pos], e + 1 + rng.gen_range(0..3), 0)),
                    1,
                );
                ensure(matches!(r, Err(Error::MonotonicityViolation { .. })), || {
                    format!("op {op}: injected violation accepted")
                })?;
                injected += 1;
            }
            let (wp, ws) = (wid, wid + 1);
            wid += 2;
            let pred = (pos > 0).then(|| Neighbor::new(hs[pos - 1], lp, wp));
            let succ = (pos < n).then(|| Neighbor::new(hs[pos], ls, ws));
            let h = list.insert(pred, succ, lp.max(ls) + 1).map_err(|e| e.to_string())?;
            hs.insert(pos, h);
            if n > 0 {
                if pos == 0 {
                    entries.insert(0, (ls, ws));
                } else if pos == n {
                    entries.push((lp, wp));
                } else {
                    let e = entries[pos - 1].0;
                    let (a, b) = if ls == e { ((lp, wp), (e, ws)) } else { ((e, wp), (ls, ws)) };
                    entries[pos - 1] = a;
                    entries.insert(pos, b);
                }
            }
        } else {
            let pos = rng.gen_range(0..n);
            list.remove(hs[pos]).map_err(|e| e.to_string())?;
            hs.remove(pos);
            if n > 1 {
                if pos == 0 {
                    entries.remove(0);
                } else if pos == n - 1 {
                    entries.pop();
                } else {
                    let (a, c) = (entries[pos - 1], entries[pos]);
                    entries[pos - 1] = if a.0 <= c.0 { a } else { c };
                    entries.remove(pos);
                }
            }
        }
        let n = hs.len();
        for _ in 0..2 {
            let (p, q) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if p == q {
                continue;
            }
            queries += 1;
            let (lo, hi) = (p.min(q), p.max(q));
            let want = entries[lo..hi].iter().map(|e| e.0).min().unwrap();
            let (v, w) = list.lcp_witness(hs[p], hs[q]).map_err(|e| e.to_string())?;
            ensure(v == want, || format!("op {op}: lcp {v} != {want}"))?;
            let w = w.ok_or("missing witness")?;
            ensure(entries[lo..hi].contains(&(want, w)), || {
                format!("op {op}: witness {w} is not a minimal entry between the handles")
            })?;
            ensure(list.order(hs[p], hs[q]).map_err(|e| e.to_string())? == p.cmp(&q), || {
                format!("op {op}: order")
            })?;
        }
        if op % AUDIT_PERIOD == 0 {
            audit(list.validate_structure());
            let vals: Vec<usize> = entries.iter().map(|e| e.0).collect();
            ensure(list.adjacent_lcps() == vals, || format!("op {op}: entry arrays differ"))?;
        }
    }
    Ok(format!(
        "{RMQ_OPS} ops, {queries} lcp/witness queries exact, {injected}/{injected} violations rejected"
    ))
}

// 4 ------------------------------------------------------------------------

fn fly_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut failures = 0;
    let mut sessions = 0;
    while sessions < FLY_SESSIONS {
        let sigma = [1u8, 2, 3, 26][rng.gen_range(0..4)];
        let gen = |rng: &mut ChaCha8Rng, max: usize| -> Vec<Symbol> {
            let len = rng.gen_range(0..=max);
            (0..len).map(|_| sym(b'a' + rng.gen_range(0..sigma))).collect()
        };
        let mut keys: Vec<Vec<Symbol>> = (0..rng.gen_range(1..300)).map(|_| gen(&mut rng, 40)).collect();
        keys.sort();
        keys.dedup();
        let mut list: DsLcpList<()> = DsLcpList::new();
        let mut hs: Vec<ListHandle> = Vec::new();
        for (i, k) in keys.iter().enumerate() {
            let pred = hs.last().map(|&p| {
                let l = keys[i - 1].iter().zip(k).take_while(|(a, b)| a == b).count();
                Neighbor::new(p, l, ())
            });
            hs.push(list.insert(pred, None, k.len() + 1).map_err(|e| e.to_string())?);
        }
        for _ in 0..100 {
            let y = if rng.gen_bool(0.5) {
                // Extend or cut a stored key so long matches happen.
                let mut y = keys[rng.gen_range(0..keys.len())].clone();
                y.truncate(rng.gen_range(0..=y.len()));
                y.extend(gen(&mut rng, 10));
                y
            } else {
                gen(&mut rng, 40)
            };
            let mode = if rng.gen_bool(0.5) { Termination::Exact } else { Termination::Prefix };
            let mut sess = FlySession::with_mode(y.as_slice(), mode);
            // A binary search followed by arbitrary extra probes.
            let (mut lo, mut hi) = (0usize, keys.len());
            while lo < hi {
                let mid = (lo + hi) / 2;
                match sess.compare(&list, hs[mid], keys[mid].as_slice()).map_err(|e| e.to_string())?.0 {
                    Ordering::Greater => lo = mid + 1,
                    _ => hi = mid,
                }
            }
            for _ in 0..rng.gen_range(0..10) {
                let i = rng.gen_range(0..keys.len());
                sess.compare(&list, hs[i], keys[i].as_slice()).map_err(|e| e.to_string())?;
            }
            let bound = 2 * (sess.calls() + y.len() as u64) + 4;
            if sess.char_cmps() > bound {
                failures += 1;
            }
            worst = worst.max(sess.char_cmps() as f64 / bound as f64);
            sessions += 1;
        }
    }
    ensure(failures == 0, || format!("{failures} sessions over the bound"))?;
    Ok(format!("{sessions} sessions, 0 over 2(g+|y|)+4, worst ratio {worst:.3}"))
}

// 5 ------------------------------------------------------------------------

/// Least squares for `x` in `A x = b`, `A` with three columns.
fn least_squares(rows: &[[f64; 3]], b: &[f64]) -> Option<[f64; 3]> {
    let mut m = [[0.0f64; 4]; 3];
    for (r, &y) in rows.iter().zip(b) {
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += r[i] * r[j];
            }
            m[i][3] += r[i] * y;
        }
    }
    for c in 0..3 {
        let p = (c..3).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        m.swap(c, p);
        if m[c][c].abs() < 1e-12 {
            return None;
        }
        for r in 0..3 {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..4 {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

fn query_shape() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fits = Vec::new();
    for &lg in &QUERY_SIZES {
        let n = 1usize << lg;
        let text = random_text(&mut rng, n, 4);
        let tree: SuffixTree = SuffixTree::build(&text).map_err(|e| e.to_string())?;
        let logn = lg as f64;
        let (mut rows, mut reads) = (Vec::new(), Vec::new());
        for q in 0..400 {
            let m = rng.gen_range(1..=48usize);
            let pattern = if q % 2 == 0 {
                let s = rng.gen_range(0..=n - m);
                text[s..s + m].to_vec()
            } else {
                random_text(&mut rng, m, 4)
            };
            let occ = tree.locate(&pattern);
            ensure(occ.positions == naive_search(&text, &pattern), || {
                format!("n=2^{lg}: occurrences differ for a pattern of length {m}")
            })?;
            rows.push([m as f64, logn, occ.count() as f64]);
            reads.push(occ.char_reads as f64);
        }
        let c = least_squares(&rows, &reads).ok_or("singular fit")?;
        fits.push((lg, c[0], c[1], c[2]));
    }
    let detail = fits
        .iter()
        .map(|(lg, c1, c2, c3)| format!("2^{lg}: c1={c1:.2} c2={c2:.2} c3={c3:.3}"))
        .collect::<Vec<_>>()
        .join("; ");
    let c2s: Vec<f64> = fits.iter().map(|f| f.2).collect();
    let (lo, hi) = (c2s.iter().cloned().fold(f64::MAX, f64::min), c2s.iter().cloned().fold(0.0, f64::max));
    ensure(fits.iter().all(|f| f.1 <= QUERY_C1_MAX), || format!("c1 above {QUERY_C1_MAX}: {detail}"))?;
    ensure(lo > 0.0 && hi / lo <= QUERY_C2_DRIFT, || format!("c2 drift {:.2}: {detail}", hi / lo))?;
    Ok(format!("{detail}; c2 drift {:.2}, occurrences exact", hi / lo))
}

// 6 ------------------------------------------------------------------------

fn update_scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut parts = Vec::new();
    let mut worst_c = 0.0f64;
    let mut failed = Vec::new();
    for kind in ["random", "a^n", "(ab)^n", "fibonacci"] {
        let mut p999 = Vec::new();
        for lg in [UPDATE_SMALL, UPDATE_LARGE] {
            let n = 1usize << lg;
            let text = workload(kind, n, &mut rng);
            let mut tree: SuffixTree = SuffixTree::new();
            let mut steps = Vec::with_capacity(n);
            let mut total = 0u64;
            for &a in text.iter().rev() {
                tree.extend_front(a).map_err(|e| e.to_string())?;
                let c = tree.last_cost();
                steps.push(c.steps);
                total += c.steps + c.rebuild_steps;
            }
            p999.push(Summary::from_samples(&steps).p999);
            worst_c = worst_c.max(total as f64 / (n as f64 * lg as f64));
        }
        let ratio = p999[1] as f64 / p999[0] as f64;
        parts.push(format!("{kind} {}/{}={ratio:.2}", p999[1], p999[0]));
        if ratio > UPDATE_RATIO_MAX {
            failed.push(kind);
        }
    }
    let detail = format!(
        "p999(2^{UPDATE_LARGE})/p999(2^{UPDATE_SMALL}) {} (max {UPDATE_RATIO_MAX:.2}); total <= {worst_c:.2} n log n",
        parts.join(", ")
    );
    ensure(failed.is_empty(), || format!("{detail}; over on {failed:?}"))?;
    Ok(detail)
}

// 7 ------------------------------------------------------------------------

fn sort_throughput() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let text = random_text(&mut rng, SORT_LEN, 256);
    let start = Instant::now();
    let idx: SuffixIndex = SuffixIndex::build(&text).map_err(|e| e.to_string())?;
    let (sa, lcp) = idx.dump_suffix_array();
    let t = start.elapsed();
    let ranks = sample_ranks(sa.len(), SORT_PAIRS, 7);
    let bad = check_pairs(idx.text(), &sa, &lcp, &ranks);
    ensure(bad.is_empty(), || format!("{} sampled pairs wrong, first {:?}", bad.len(), bad[0]))?;
    ensure(t < SORT_BUDGET, || format!("took {t:.1?}"))?;
    Ok(format!("{SORT_LEN} bytes sorted in {t:.1?}, {} pairs exact", ranks.len()))
}

// 8 ------------------------------------------------------------------------

fn dynamic_lca() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut t = DynamicLca::new();
    let mut o = ParentTree::new();
    let mut live: Vec<usize> = vec![0];
    let mut pos_of: Vec<usize> = vec![0];
    let (mut adds, mut removes, mut queries) = (0, 0, 0);
    for op in 0..LCA_OPS {
        let r = rng.gen_range(0..10);
        if r < 3 && live.len() < LCA_MAX_LIVE {
            let p = live[rng.gen_range(0..live.len())];
            let u = t.add_leaf(LcaNode(p as u32)).map_err(|e| e.to_string())?.0 as usize;
            ensure(u == o.add_leaf(p), || "node ids out of step".into())?;
            pos_of.push(live.len());
            live.push(u);
            adds += 1;
        } else if r < 5 && live.len() > 1 {
            let u = live[rng.gen_range(0..live.len())];
            if u == 0 {
                continue;
            }
            if !o.is_leaf(u) {
                ensure(matches!(t.remove_leaf(LcaNode(u as u32)), Err(Error::HasChildren)), || {
                    format!("op {op}: internal node removed")
                })?;
                continue;
            }
            t.remove_leaf(LcaNode(u as u32)).map_err(|e| e.to_string())?;
            o.remove_leaf(u);
            let at = pos_of[u];
            live.swap_remove(at);
            if at < live.len() {
                pos_of[live[at]] = at;
            }
            removes += 1;
        } else {
            let (u, v) = (live[rng.gen_range(0..live.len())], live[rng.gen_range(0..live.len())]);
            let got = t.lca(LcaNode(u as u32), LcaNode(v as u32)).map_err(|e| e.to_string())?;
            let want = o.lca(u, v);
            ensure(got.0 as usize == want, || format!("op {op}: lca({u},{v}) = {} != {want}", got.0))?;
            queries += 1;
        }
        if op % AUDIT_PERIOD == 0 {
            audit(t.list().validate_structure());
        }
    }
    Ok(format!("{adds} adds, {removes} removes, {queries} lca queries exact (<= {LCA_MAX_LIVE} live)"))
}

// 9 ------------------------------------------------------------------------

fn suites_for<C: OrderedContainer>(seed: u64) -> Result<u64, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Suffix side: mixed pushes and pops, oracle-checked, with queries.
    for round in 0..20 {
        let sigma = [1u32, 2, 4, 26][round % 4];
        let mut idx = SuffixIndex::<(), C>::with_options(seed + round as u64, 8);
        for op in 0..800 {
            if idx.text().user_len() > 0 && rng.gen_bool(0.3) {
                idx.pop_front().map_err(|e| e.to_string())?;
            } else {
                idx.push_front(Symbol(1 + rng.gen_range(0..sigma))).map_err(|e| e.to_string())?;
            }
            if op % 100 == 0 {
                let text = idx.text().to_symbols();
                let want = naive_suffix_array(&text, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
                ensure(idx.dump_suffix_array() == want, || format!("{}: suffix array differs", C::name()))?;
                let m = rng.gen_range(1..4);
                let p = random_text(&mut rng, m, sigma);
                ensure(idx.locate(&p).positions == naive_search(&text, &p), || {
                    format!("{}: locate differs", C::name())
                })?;
                audit(idx.validate());
            }
        }
    }
    // String-set side.
    let mut stray = 0u64;
    for round in 0..10 {
        let mut set = StringSet::<C>::with_seed(seed + round);
        let mut strings: Vec<Vec<Symbol>> = (0..1000)
            .map(|_| {
                let n = rng.gen_range(0..16);
                random_text(&mut rng, n, 3)
            })
            .collect();
        let mut hs: Vec<ListHandle> = strings.iter().map(|x| set.insert_string(x)).collect();
        audit(set.validate());
        strings.sort();
        let walk: Vec<Vec<Symbol>> = set.handles().iter().map(|&h| set.key(h).unwrap().to_vec()).collect();
        ensure(walk == strings, || format!("{}: string order differs", C::name()))?;
        for x in &strings[..50] {
            ensure(matches!(set.search(x), Lookup::Found(_)), || format!("{}: stored string not found", C::name()))?;
        }
        hs.shuffle(&mut rng);
        for (i, h) in hs.into_iter().enumerate() {
            set.remove_string(h).map_err(|e| e.to_string())?;
            if i % 250 == 0 {
                audit(set.validate());
            }
        }
        ensure(set.is_empty(), || "set not empty after removals".into())?;
        stray += set.audit().stray;
    }
    Ok(stray)
}

fn container_genericity() -> Outcome {
    let avl = suites_for::<AvlTree>(90).map_err(|e| format!("avl: {e}"))?;
    let treap = suites_for::<Treap>(91).map_err(|e| format!("treap: {e}"))?;
    ensure(avl == 0 && treap == 0, || format!("direct key reads: avl {avl}, treap {treap}"))?;
    Ok("suffix and string-set suites pass for avl and treap; direct key reads: 0 and 0".into())
}

// 10 -----------------------------------------------------------------------

fn structure_audit() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    // A long mixed run over both suffix structures.
    let mut tree = SuffixTree::<AvlTree>::with_options(10, 8);
    for op in 0..30_000 {
        let n = tree.text().user_len();
        if n > 0 && rng.gen_bool(if n > 3000 { 0.7 } else { 0.35 }) {
            tree.contract_front().map_err(|e| e.to_string())?;
        } else {
            tree.extend_front(Symbol(1 + rng.gen_range(0..3))).map_err(|e| e.to_string())?;
        }
        if op % AUDIT_PERIOD == 0 {
            audit(tree.validate_tree());
            audit(tree.index().validate());
        }
    }
    // The tree audit must notice a corrupted edge.
    let v = tree.leaf(tree.text().len());
    tree.debug_shift_edge(v, 1);
    ensure(!tree.validate_tree().is_empty(), || "corrupted edge went unnoticed".into())?;

    let audits = AUDITS.load(AtomicOrdering::Relaxed);
    let violations = VIOLATIONS.load(AtomicOrdering::Relaxed);
    ensure(violations == 0, || format!("{violations} violations in {audits} audits"))?;
    Ok(format!("{audits} sampled audits across all fuzz runs, 0 violations; injected fault detected"))
}

fn main() {
    // Criterion 10 tallies audits made by the others, so it runs last.
    let criteria: [Criterion; 10] = [
        (1, "suffix structures equal oracle", oracle_equality),
        (2, "incremental tree isomorphic after every op", lifo_scripts),
        (3, "monotone rmq vs naive array", monotone_rmq),
        (4, "on-the-fly comparison cost bound", fly_bound),
        (5, "query cost shape", query_shape),
        (6, "update cost scaling", update_scaling),
        (7, "suffix sorting throughput", sort_throughput),
        (8, "dynamic lca vs parent walk", dynamic_lca),
        (9, "container genericity and key-read audit", container_genericity),
        (10, "structure audits", structure_audit),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (id, name, f) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match r {
            Ok(detail) => println!("PASS [{id:>2}] {name}: {detail} ({t:.1?})"),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{id:>2}] {name}: {detail} ({t:.1?})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
