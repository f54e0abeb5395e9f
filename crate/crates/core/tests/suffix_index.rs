use lcpindex::oracle::{naive_search, naive_suffix_array, DEFAULT_LIMIT};
use lcpindex::{symbols_from_bytes, AvlTree, Error, OrderedContainer, SuffixIndex, Symbol, TextBuffer, Treap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s(x: &str) -> Vec<Symbol> {
    symbols_from_bytes(x.as_bytes())
}

#[test]
fn text_buffer_addressing() {
    let mut t = TextBuffer::from_symbols(&s("a")).unwrap();
    for &c in b"nanab" {
        t.prepend(Symbol::from_byte(c)).unwrap();
    }
    assert_eq!(t.to_symbols(), s("banana"));
    assert_eq!(t.len(), 7);
    assert_eq!(t.char_at(1).unwrap(), Symbol::SENTINEL);
    assert_eq!(t.char_at(2).unwrap(), Symbol::from_byte(b'a'));
    assert_eq!(t.char_at(7).unwrap(), Symbol::from_byte(b'b'));
    assert!(matches!(t.char_at(9), Err(Error::OutOfRange { .. })));
    assert!(matches!(t.prepend(Symbol::SENTINEL), Err(Error::ReservedSymbol)));
}

#[test]
fn banana() {
    let idx: SuffixIndex = SuffixIndex::build(&s("banana")).unwrap();
    let (sa, lcp) = idx.dump_suffix_array();
    assert_eq!(sa, vec![6, 5, 3, 1, 0, 4, 2]);
    assert_eq!(lcp, vec![0, 1, 3, 0, 0, 2]);
    let occ = idx.locate(&s("ana"));
    assert_eq!(occ.positions, vec![1, 3]);
    assert_eq!(occ.count(), 2);
    assert_eq!(idx.locate(&s("x")).count(), 0);
    assert_eq!(idx.locate(&s("bananas")).count(), 0);
    assert!(idx.validate().is_empty());
}

#[test]
fn push_reports_neighbours() {
    let mut idx: SuffixIndex = SuffixIndex::build(&s("nana")).unwrap();
    let info = idx.push_front(Symbol::from_byte(b'a')).unwrap();
    // pred = ana$ (length 4), succ = na$ (length 3).
    assert_eq!((info.pred, info.lcp_pred), (Some(4), 3));
    assert_eq!((info.succ, info.lcp_succ), (Some(3), 0));
    assert_eq!(idx.lcp(6, 4), 3);
}

fn check_against_oracle<C: OrderedContainer>(idx: &SuffixIndex<(), C>) {
    let text = idx.text().to_symbols();
    let want = naive_suffix_array(&text, DEFAULT_LIMIT).unwrap();
    assert_eq!(idx.dump_suffix_array(), want);
}

#[test]
fn pop_banana_to_empty() {
    let mut idx: SuffixIndex = SuffixIndex::build(&s("banana")).unwrap();
    while idx.text().user_len() > 0 {
        idx.pop_front().unwrap();
        check_against_oracle(&idx);
        assert!(idx.validate().is_empty());
    }
    assert_eq!(idx.dump_suffix_array().0, vec![0]);
    assert!(matches!(idx.pop_front(), Err(Error::Underflow)));
}

fn random_mixed<C: OrderedContainer>(seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = [1u8, 2, 4, 26][seed as usize % 4];
    let mut idx = SuffixIndex::<(), C>::with_options(seed, 8);
    for step in 0..600 {
        if idx.text().user_len() > 0 && rng.gen_bool(0.3) {
            idx.pop_front().unwrap();
        } else {
            idx.push_front(Symbol::from_byte(b'a' + rng.gen_range(0..sigma))).unwrap();
        }
        if step % 25 == 0 {
            check_against_oracle(&idx);
            assert!(idx.validate().is_empty());
            let text = idx.text().to_symbols();
            for _ in 0..5 {
                let m = rng.gen_range(1..=4);
                let p: Vec<Symbol> = (0..m).map(|_| Symbol::from_byte(b'a' + rng.gen_range(0..sigma))).collect();
                assert_eq!(idx.locate(&p).positions, naive_search(&text, &p));
            }
        }
    }
}

#[test]
fn random_mixed_avl() {
    for seed in 0..8 {
        random_mixed::<AvlTree>(seed);
    }
}

#[test]
fn random_mixed_treap() {
    for seed in 0..8 {
        random_mixed::<Treap>(seed);
    }
}

#[test]
fn empty_text() {
    let idx: SuffixIndex = SuffixIndex::build(&[]).unwrap();
    assert_eq!(idx.dump_suffix_array(), (vec![0], vec![]));
    assert_eq!(idx.locate(&s("a")).count(), 0);
}
