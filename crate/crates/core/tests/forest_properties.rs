use koszul_forests::forest::{
    enumerate_forests, factorize_left_comb, parse_forest, Decoration, Forest, Tree,
};
use koszul_forests::homology::catalan;
use proptest::prelude::*;

fn labels() -> Vec<Decoration> {
    ["a", "b", "x1"].iter().map(|s| Decoration::new(s).unwrap()).collect()
}

fn tree() -> impl Strategy<Value = Tree> {
    let leaf = prop::sample::select(labels()).prop_map(Tree::leaf);
    leaf.prop_recursive(4, 24, 3, |inner| {
        (prop::sample::select(labels()), prop::collection::vec(inner, 0..3))
            .prop_map(|(d, children)| Tree::new(d, children))
    })
}

fn forest() -> impl Strategy<Value = Forest> {
    prop::collection::vec(tree(), 1..4).prop_map(|t| Forest::new(t).unwrap())
}

proptest! {
    #[test]
    fn text_round_trip(f in forest()) {
        let text = f.to_string();
        prop_assert_eq!(parse_forest(&text).unwrap(), f);
    }

    #[test]
    fn products_add_weights_and_keep_postorder(f in forest(), g in forest()) {
        let word = |x: &Forest| x.postorder().into_iter().cloned().collect::<Vec<_>>();
        let mut fg = word(&f);
        fg.extend(word(&g));
        for p in [f.concat(&g), f.graft_root(&g), f.graft_left_leaf(&g)] {
            prop_assert_eq!(p.weight(), f.weight() + g.weight());
            prop_assert_eq!(word(&p), fg.clone());
        }
    }

    #[test]
    fn relations_on_random_triples(f in forest(), g in forest(), h in forest()) {
        check_relations(&f, &g, &h);
    }

    #[test]
    fn factorization_refolds(f in forest()) {
        prop_assert_eq!(factorize_left_comb(&f).refold(), f);
    }
}

fn check_relations(f: &Forest, g: &Forest, h: &Forest) {
    // m associative; (F G)↘H = F↘(G↘H); F↘(G H) = (F↘G) H.
    assert_eq!(f.concat(g).concat(h), f.concat(&g.concat(h)));
    assert_eq!(f.concat(g).graft_root(h), f.graft_root(&g.graft_root(h)));
    assert_eq!(f.graft_root(&g.concat(h)), f.graft_root(g).concat(h));
    // (F↗G)↗H = F↗(G↗H); F↗(G H) = (F↗G) H.
    assert_eq!(f.graft_left_leaf(g).graft_left_leaf(h), f.graft_left_leaf(&g.graft_left_leaf(h)));
    assert_eq!(f.graft_left_leaf(&g.concat(h)), f.graft_left_leaf(g).concat(h));
}

#[test]
fn relations_on_all_triples_up_to_weight_six() {
    let d = Decoration::numbered(1);
    let by_weight: Vec<Vec<Forest>> = (0..=4).map(|w| enumerate_forests(w, &d)).collect();
    let mut triples = 0u128;
    let mut expected = 0u128;
    for a in 1..=4 {
        for b in 1..=(5 - a).min(4) {
            for c in 1..=(6 - a - b).min(4) {
                expected += catalan(a) * catalan(b) * catalan(c);
                for f in &by_weight[a] {
                    for g in &by_weight[b] {
                        for h in &by_weight[c] {
                            check_relations(f, g, h);
                            triples += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(triples, expected);
}

#[test]
fn enumeration_counts() {
    for d in 1..=3 {
        let decorations = Decoration::numbered(d);
        for w in 1..=5 {
            let forests = enumerate_forests(w, &decorations);
            assert_eq!(forests.len() as u128, catalan(w) * (d as u128).pow(w as u32));
            assert!(forests.windows(2).all(|p| p[0] < p[1]));
            assert!(forests.iter().all(|f| f.weight() == w));
        }
    }
}
