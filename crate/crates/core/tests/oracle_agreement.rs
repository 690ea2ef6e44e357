//! The reducer and the membership oracle must never disagree.

use rees_kit::demos;
use rees_kit::oracle::{member_lower, member_lower_escalating, replay, Limits};
use rees_kit::random::{batch, Shape};
use rees_kit::reduce::{reduce_binomial, verify_certificate, Reduction};
use rees_kit::rees::taylor_layer;
use rees_kit::SquareFreeIdeal;

#[derive(Default, Debug)]
struct Tally {
    reduced: usize,
    stuck: usize,
    stuck_with_witness: usize,
}

fn agree(name: &str, ideal: &SquareFreeIdeal, s_max: usize) -> Tally {
    let limits = Limits::default();
    let n = ideal.len();
    let mut tally = Tally::default();
    for s in 2..=s_max {
        for b in taylor_layer(ideal, s) {
            match reduce_binomial(ideal, &b) {
                Reduction::Reduced {
                    chain,
                    terminal_degree,
                } => {
                    tally.reduced += 1;
                    assert!(
                        chain.iter().all(|c| verify_certificate(ideal, c)),
                        "{name}: bad chain"
                    );
                    let v = member_lower(ideal, &b, terminal_degree, &limits);
                    let steps = v.chain().unwrap_or_else(|| {
                        panic!(
                            "{name}: {} reduced to degree {terminal_degree} but oracle says {v:?}",
                            b.render(ideal)
                        )
                    });
                    assert!(replay(&b.lhs(n), &b.rhs(n), steps));
                }
                Reduction::Stuck { witness } => {
                    tally.stuck += 1;
                    if let Some(w) = witness {
                        tally.stuck_with_witness += 1;
                        assert!(w.check(ideal));
                        let v = member_lower_escalating(ideal, &b, s - 1, limits);
                        assert!(
                            !v.is_yes(),
                            "{name}: witness {} but {} reduces",
                            w.render(ideal),
                            b.render(ideal)
                        );
                    }
                }
            }
        }
    }
    tally
}

#[test]
fn villarreal() {
    let t = agree("villarreal", &demos::villarreal(), 4);
    assert!(t.stuck_with_witness >= 1, "{t:?}");
}

#[test]
fn pentagon() {
    let t = agree("pentagon", &demos::pentagon(), 4);
    assert!(t.stuck_with_witness >= 1, "{t:?}");
}

#[test]
fn triangle_and_path_never_get_stuck() {
    for (name, ideal) in [("triangle", demos::triangle()), ("path", demos::path())] {
        let t = agree(name, &ideal, 4);
        assert_eq!(t.stuck, 0, "{name}: {t:?}");
    }
}

#[test]
fn random_general_ideals() {
    for (k, ideal) in batch(31, Shape::General, 40, 3..=5).iter().enumerate() {
        agree(&format!("general #{k}"), ideal, 3);
    }
}
