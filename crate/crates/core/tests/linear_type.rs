use rees_kit::classify::{classify, RtVerdict};
use rees_kit::oracle::{layer_verdicts, VerdictKind, DEFAULT_MAX_STATES};
use rees_kit::random::{batch, Shape};
use rees_kit::reduce::{reduce_binomial, Reduction};
use rees_kit::rees::taylor_layer;
use rees_kit::SquareFreeIdeal;

fn layers_reduce_to_one(ideal: &SquareFreeIdeal) {
    for s in [2, 3] {
        let layer = taylor_layer(ideal, s);
        let kinds = layer_verdicts(ideal, &layer, 1, DEFAULT_MAX_STATES);
        for (b, k) in layer.iter().zip(kinds) {
            assert_eq!(
                k,
                VerdictKind::Yes,
                "{} does not reduce to layer 1",
                b.render(ideal)
            );
        }
    }
}

fn reducer_reaches_one(ideal: &SquareFreeIdeal) {
    for b in taylor_layer(ideal, 3) {
        match reduce_binomial(ideal, &b) {
            Reduction::Reduced {
                terminal_degree: 1, ..
            } => {}
            other => panic!("{}: {other:?}", b.render(ideal)),
        }
    }
}

#[test]
fn forests() {
    for ideal in batch(11, Shape::Forest, 60, 2..=6) {
        assert_eq!(classify(&ideal).verdict, RtVerdict::LinearType);
        layers_reduce_to_one(&ideal);
    }
}

#[test]
fn unique_odd_cycles() {
    for ideal in batch(12, Shape::OddCycle, 60, 3..=6) {
        assert_eq!(classify(&ideal).verdict, RtVerdict::LinearType);
        layers_reduce_to_one(&ideal);
    }
}

#[test]
fn reducer_alone_settles_trees_and_odd_cycles() {
    for ideal in batch(13, Shape::Forest, 20, 2..=6)
        .into_iter()
        .chain(batch(14, Shape::OddCycle, 20, 3..=6))
    {
        reducer_reaches_one(&ideal);
    }
}

#[test]
fn even_cycles_are_never_linear_type_by_shape() {
    for ideal in batch(15, Shape::EvenCycle, 30, 4..=5) {
        let r = classify(&ideal);
        assert_ne!(r.justification[0].tag, "forest-or-odd-cycle");
        assert!(!r.nonlinear_witnesses.is_empty() || r.verdict == RtVerdict::LinearType);
    }
}
