use koszul_forests::flavor::Flavor;
use koszul_forests::forest::{Decoration, Forest};
use koszul_forests::homology::{
    build_slice, differential, hochschild_subcomplex, homology, ChainBasisSlice, ChainWord, ForestCatalog,
    Subcomplex,
};
use koszul_forests::linalg::{rank, Backend, LinComb};
use koszul_forests::operad::{Presentation, PresentationKind};
use koszul_forests::words::{barred_words, evaluate_on_words, pointed_words, DualWord, WordCombination};

fn relations_hold<W: DualWord + std::fmt::Display>(kind: PresentationKind, words: &[W]) {
    let p = Presentation::new(kind);
    for x in words {
        for y in words {
            for z in words {
                let args = [LinComb::basis(x.clone()), LinComb::basis(y.clone()), LinComb::basis(z.clone())];
                for r in p.relations() {
                    let mut value: WordCombination<W> = LinComb::zero();
                    for (t, c) in r.iter() {
                        value.add_assign_scaled(&evaluate_on_words(t, &args).unwrap(), c);
                    }
                    assert!(value.is_zero(), "{kind}: {x}, {y}, {z}");
                }
            }
        }
    }
}

#[test]
fn dual_relations_on_words_up_to_length_four() {
    let ab = ["a", "b"];
    let pointed: Vec<_> = (1..=4).flat_map(|n| pointed_words(&ab, n)).collect();
    assert_eq!(pointed.len(), 2 + 8 + 24 + 64);
    relations_hold(PresentationKind::SearrowDual, &pointed);
    let barred: Vec<_> = (1..=4).flat_map(|n| barred_words(&ab, n)).collect();
    relations_hold(PresentationKind::NearrowDual, &barred);
}

fn full_rank_homology<W: ChainWord>(catalog: &ForestCatalog, w: usize) -> Vec<usize> {
    let slices: Vec<ChainBasisSlice<W>> = (1..=w).map(|n| build_slice(catalog, n, w)).collect();
    let mut r = vec![0; w + 2];
    for k in 2..=w {
        r[k] = rank(&differential(&slices[k - 1], &slices[k - 2], None).unwrap().matrix);
    }
    (0..w).map(|n| slices[n].len() - r[n + 1] - r[n + 2]).collect()
}

fn check_against_blocks<W: ChainWord>(d: usize, max_w: usize) {
    let catalog = ForestCatalog::new(max_w, &Decoration::numbered(d));
    let report = homology(W::FLAVOR, d, max_w, Backend::Rational).unwrap();
    for w in 1..=max_w {
        let full = full_rank_homology::<W>(&catalog, w);
        let blocked: Vec<usize> = (0..w).map(|n| report.h(w, n)).collect();
        assert_eq!(full, blocked, "{} D={d} w={w}", W::FLAVOR);
    }
}

#[test]
fn blocked_ranks_match_whole_matrices() {
    use koszul_forests::words::{BarredWord, PointedWord};
    check_against_blocks::<PointedWord<Forest>>(2, 5);
    check_against_blocks::<BarredWord<Forest>>(2, 5);
}

fn check_shape<W: ChainWord>(catalog: &ForestCatalog, w: usize) {
    for n in 2..=w {
        let source: ChainBasisSlice<W> = build_slice(catalog, n, w);
        for x in source.basis().elements() {
            assert_eq!(x.weight(), w);
            for (y, s) in x.differential_terms(None) {
                assert_eq!(y.weight(), w);
                assert_eq!(DualWord::len(&y), n - 1);
                assert!(s == 1 || s == -1);
            }
        }
    }
}

#[test]
fn differential_preserves_weight_and_lowers_length() {
    use koszul_forests::words::{BarredWord, PointedWord};
    let catalog = ForestCatalog::new(6, &Decoration::numbered(1));
    for w in 1..=6 {
        check_shape::<PointedWord<Forest>>(&catalog, w);
        check_shape::<BarredWord<Forest>>(&catalog, w);
    }
}

#[test]
fn chain_dimensions_with_two_decorations() {
    let catalog = ForestCatalog::new(6, &Decoration::numbered(2));
    let sizes: Vec<usize> = (1..=6)
        .map(|n| build_slice::<koszul_forests::words::PointedWord<Forest>>(&catalog, n, 6).len())
        .collect();
    assert_eq!(sizes, vec![8448, 21120, 21120, 11264, 3200, 384]);
    assert_eq!(sizes.iter().sum::<usize>(), 4usize.pow(5) * 2usize.pow(6));
}

#[test]
fn prime_field_agrees() {
    for flavor in Flavor::ALL {
        assert_eq!(
            homology(flavor, 2, 5, Backend::ModP).unwrap(),
            homology(flavor, 2, 5, Backend::Rational).unwrap()
        );
    }
}

#[test]
fn nearrow_with_two_generators() {
    let r = homology(Flavor::Nearrow, 2, 5, Backend::Rational).unwrap();
    assert_eq!(r.h0_total, 2);
    assert_eq!(r.max_higher_h, 0);
}

#[test]
fn hochschild_counts() {
    let r = hochschild_subcomplex(Flavor::Nearrow, Subcomplex::Arrow, 1, 5, Backend::Rational).unwrap();
    assert_eq!((1..=5).map(|w| r.h(w, 0)).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14]);
    assert_eq!(r.max_higher_h, 0);

    // The m-subcomplex is the bar complex of the free associative algebra on
    // trees, so its homology in word length 1 counts trees of each weight.
    let r = hochschild_subcomplex(Flavor::Nearrow, Subcomplex::M, 2, 4, Backend::Rational).unwrap();
    assert_eq!((1..=4).map(|w| r.h(w, 0)).collect::<Vec<_>>(), vec![2, 4, 16, 80]);
    assert_eq!(r.max_higher_h, 0);
    let r = hochschild_subcomplex(Flavor::Searrow, Subcomplex::M, 1, 5, Backend::Rational).unwrap();
    assert_eq!((1..=5).map(|w| r.h(w, 0)).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14]);
    assert_eq!(r.max_higher_h, 0);
}
