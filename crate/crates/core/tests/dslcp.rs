use lcpindex::dslcp::{DsLcpList, ListHandle, Neighbor};
use lcpindex::error::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Naive mirror: handles in order plus the adjacent entries `(value, witness)`.
#[derive(Default)]
struct Mirror {
    handles: Vec<ListHandle>,
    entries: Vec<(usize, u32)>,
    strlen: Vec<usize>,
}

fn check_pair(list: &DsLcpList<u32>, m: &Mirror, p: usize, q: usize) {
    let (hp, hq) = (m.handles[p], m.handles[q]);
    let (v, w) = list.lcp_witness(hp, hq).unwrap();
    if p == q {
        assert_eq!(v, m.strlen[p]);
        assert!(w.is_none());
        return;
    }
    let (lo, hi) = (p.min(q), p.max(q));
    let min = m.entries[lo..hi].iter().map(|e| e.0).min().unwrap();
    assert_eq!(v, min, "lcp({p},{q})");
    let w = w.unwrap();
    assert!(
        m.entries[lo..hi].contains(&(min, w)),
        "witness {w} not on a minimal entry in {lo}..{hi}"
    );
    assert_eq!(list.order(hp, hq).unwrap(), p.cmp(&q));
}

fn run(seed: u64, ops: usize, b: usize, audit_every: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut list: DsLcpList<u32> = DsLcpList::with_branching(b);
    let mut m = Mirror::default();
    let mut wid = 0u32;
    let max_val = rng.gen_range(1..40);
    for op in 0..ops {
        let grow = m.handles.len() < 8 || rng.gen_bool(0.6);
        if grow {
            let pos = rng.gen_range(0..=m.handles.len());
            let n = m.handles.len();
            let (lp, ls) = if pos == 0 || pos == n {
                (rng.gen_range(0..max_val), rng.gen_range(0..max_val))
            } else {
                let e = m.entries[pos - 1].0;
                let other = e + rng.gen_range(0..4);
                if rng.gen_bool(0.5) { (e, other) } else { (other, e) }
            };
            let (wp, ws) = (wid, wid + 1);
            wid += 2;
            let pred = (pos > 0).then(|| Neighbor::new(m.handles[pos - 1], lp, wp));
            let succ = (pos < n).then(|| Neighbor::new(m.handles[pos], ls, ws));
            // Inject a violation now and then.
            if pos > 0 && pos < n && rng.gen_bool(0.05) {
                let e = m.entries[pos - 1].0;
                let bad = Neighbor::new(m.handles[pos - 1], e + 1, 0);
                let bad_s = Neighbor::new(m.handles[pos], e + 2, 0);
                let before = list.adjacent_lcps();
                assert!(matches!(
                    list.insert(Some(bad), Some(bad_s), 1),
                    Err(Error::MonotonicityViolation { .. })
                ));
                assert_eq!(before, list.adjacent_lcps());
            }
            let strlen = lp.max(ls) + 1;
            let h = list.insert(pred, succ, strlen).unwrap();
            m.handles.insert(pos, h);
            m.strlen.insert(pos, strlen);
            if n > 0 {
                if pos == 0 {
                    m.entries.insert(0, (ls, ws));
                } else if pos == n {
                    m.entries.push((lp, wp));
                } else {
                    let e = m.entries[pos - 1].0;
                    let (np, ns) = if ls == e { ((lp, wp), (e, ws)) } else { ((e, wp), (ls, ws)) };
                    m.entries[pos - 1] = np;
                    m.entries.insert(pos, ns);
                }
            }
        } else {
            let pos = rng.gen_range(0..m.handles.len());
            list.remove(m.handles[pos]).unwrap();
            let n = m.handles.len();
            m.handles.remove(pos);
            m.strlen.remove(pos);
            if n > 1 {
                if pos == 0 {
                    m.entries.remove(0);
                } else if pos == n - 1 {
                    m.entries.pop();
                } else {
                    let (a, c) = (m.entries[pos - 1], m.entries[pos]);
                    m.entries[pos - 1] = if a.0 <= c.0 { a } else { c };
                    m.entries.remove(pos);
                }
            }
        }
        let n = m.handles.len();
        for _ in 0..3 {
            if n > 0 {
                check_pair(&list, &m, rng.gen_range(0..n), rng.gen_range(0..n));
            }
        }
        if op % audit_every == 0 {
            let v = list.validate_structure();
            assert!(v.is_empty(), "op {op}: {v:?}");
            let walk: Vec<_> = list.iter().collect();
            assert_eq!(walk, m.handles);
            let vals: Vec<usize> = m.entries.iter().map(|e| e.0).collect();
            assert_eq!(list.adjacent_lcps(), vals);
        }
    }
    assert!(list.validate_structure().is_empty());
}

#[test]
fn random_monotone_ops_match_naive_array() {
    for seed in 0..20 {
        run(seed, 3000, 8, 97);
    }
}

#[test]
fn small_branching_and_growth() {
    run(99, 20_000, 5, 1000);
    run(100, 20_000, 6, 1000);
}

#[test]
fn grow_then_shrink_to_empty() {
    let mut list: DsLcpList<()> = DsLcpList::new();
    let mut hs = Vec::new();
    for i in 0..5000 {
        let pred = hs.last().map(|&h| Neighbor::new(h, i % 7, ()));
        hs.push(list.insert(pred, None, 10).unwrap());
    }
    assert!(list.validate_structure().is_empty());
    for (i, h) in hs.iter().enumerate() {
        list.remove(*h).unwrap();
        if i % 500 == 0 {
            assert!(list.validate_structure().is_empty());
        }
    }
    assert!(list.is_empty());
    assert!(list.validate_structure().is_empty());
    assert_eq!(list.remove(hs[0]), Err(Error::InvalidHandle));
}

/// Suffixes of banana$ in sorted order: $, a$, ana$, anana$, banana$, na$, nana$.
fn banana_list() -> (DsLcpList<()>, Vec<ListHandle>) {
    let lens = [1, 2, 4, 6, 7, 3, 5];
    let lcps = [0, 1, 3, 0, 0, 2];
    let mut list = DsLcpList::new();
    let mut hs: Vec<ListHandle> = Vec::new();
    for (i, &len) in lens.iter().enumerate() {
        let pred = hs.last().map(|&p| Neighbor::new(p, lcps[i - 1], ()));
        hs.push(list.insert(pred, None, len).unwrap());
    }
    (list, hs)
}

#[test]
fn banana_queries() {
    let (list, h) = banana_list();
    assert_eq!(list.adjacent_lcps(), vec![0, 1, 3, 0, 0, 2]);
    assert_eq!(list.lcp(h[2], h[6]).unwrap(), 0);
    assert_eq!(list.lcp(h[2], h[3]).unwrap(), 3);
    assert_eq!(list.lcp(h[3], h[2]).unwrap(), 3);
    assert_eq!(list.order(h[2], h[5]).unwrap(), std::cmp::Ordering::Less);
    assert_eq!(list.next(h[2]).unwrap(), Some(h[3]));
    assert_eq!(list.adjacent_lcp(h[2]).unwrap(), Some(3));
    assert!(list.validate_structure().is_empty());
}

#[test]
fn banana_remove_merges_entries() {
    let (mut list, h) = banana_list();
    list.remove(h[3]).unwrap();
    assert_eq!(list.adjacent_lcps(), vec![0, 1, 0, 0, 2]);
    assert_eq!(list.lcp(h[2], h[4]).unwrap(), 0);
    assert!(list.validate_structure().is_empty());
}

#[test]
fn monotone_insert_and_violation() {
    // <a$, ana$> with entry 1.
    let mut list = DsLcpList::<()>::new();
    let a = list.insert(None, None, 2).unwrap();
    let ana = list.insert(Some(Neighbor::new(a, 1, ())), None, 4).unwrap();
    let bad = list.insert(Some(Neighbor::new(a, 2, ())), Some(Neighbor::new(ana, 3, ())), 3);
    assert!(matches!(bad, Err(Error::MonotonicityViolation { .. })));
    assert_eq!(list.len(), 2);
    assert_eq!(list.adjacent_lcps(), vec![1]);
    let ab = list.insert(Some(Neighbor::new(a, 1, ())), Some(Neighbor::new(ana, 1, ())), 3).unwrap();
    assert_eq!(list.adjacent_lcps(), vec![1, 1]);
    assert_eq!(list.next(a).unwrap(), Some(ab));
    // Non-adjacent neighbours.
    let r = list.insert(Some(Neighbor::new(a, 1, ())), Some(Neighbor::new(ana, 1, ())), 3);
    assert!(matches!(r, Err(Error::AdjacencyViolation)));
}

#[test]
fn small_list_edge_cases() {
    let mut list = DsLcpList::<()>::new();
    assert!(list.validate_structure().is_empty());
    let d = list.insert(None, None, 1).unwrap();
    assert!(list.adjacent_lcps().is_empty());
    let a = list.insert(Some(Neighbor::new(d, 0, ())), None, 2).unwrap();
    list.remove(d).unwrap();
    assert_eq!(list.len(), 1);
    assert!(list.adjacent_lcps().is_empty());
    list.remove(a).unwrap();
    assert!(list.is_empty());
    assert!(matches!(list.remove(a), Err(Error::InvalidHandle)));
    assert!(list.validate_structure().is_empty());
}
