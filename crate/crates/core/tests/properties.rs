use proptest::prelude::*;

use combichannel::bounds::{dsu, ldl, ldu_iterated, local_degree_step, mdl, mdu, regular_value, LduSteps};
use combichannel::io::{read_channel, write_channel};
use combichannel::lp::{fractional_packing, integer_covering, integer_packing, IntConfig, LpConfig};
use combichannel::rational::{int, ratio};
use combichannel::zoo::erasure_substitution_channel;
use combichannel::{Certificate, CertificateKind, Channel, Rational};

/// Small channels with every vertex touched: a random edge mask plus a
/// diagonal that keeps inputs and outputs non-isolated.
fn channel() -> impl Strategy<Value = Channel> {
    (1usize..=7, 1usize..=7)
        .prop_flat_map(|(nx, ny)| (Just(nx), Just(ny), proptest::collection::vec(any::<bool>(), nx * ny)))
        .prop_map(|(nx, ny, mask)| {
            let random = (0..nx * ny).filter(|&i| mask[i]).map(|i| (i / ny, i % ny));
            let diagonal = (0..nx.max(ny)).map(|i| (i % nx, i % ny));
            Channel::from_edges_dedup(nx, ny, random.chain(diagonal).collect::<Vec<_>>()).unwrap()
        })
}

fn weights(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((1i64..=9, 1i64..=4).prop_map(|(p, q)| ratio(p, q)), len)
}

fn channel_and_output_t() -> impl Strategy<Value = (Channel, Vec<Rational>)> {
    channel().prop_flat_map(|a| {
        let ny = a.num_outputs();
        (Just(a), weights(ny))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_is_feasible_scale_free_and_shrinks_covers((a, t) in channel_and_output_t(), c in 1i64..=7) {
        let z = local_degree_step(&a, &t).unwrap();
        prop_assert!(a.check_cover(&z));
        let scaled: Vec<Rational> = t.iter().map(|v| v * ratio(c, 3)).collect();
        prop_assert_eq!(&local_degree_step(&a, &scaled).unwrap(), &z);
        let again = local_degree_step(&a, &z.values).unwrap();
        prop_assert!(again.values.iter().zip(&z.values).all(|(n, o)| n <= o));
    }

    #[test]
    fn upper_bounds_sit_above_the_lp((a, t) in channel_and_output_t()) {
        let lp = fractional_packing(&a, &LpConfig::default()).unwrap();
        prop_assert_eq!(lp.primal.total(), lp.value.clone());
        prop_assert_eq!(lp.dual.total(), lp.value.clone());
        let one = vec![int(1); a.num_outputs()];
        for bound in [mdu(&a, &one), dsu(&a, &t), ldu_iterated(&a, &t, LduSteps::Fixed(2))] {
            prop_assert!(lp.value <= bound.unwrap().exact);
        }
        let unit_in = vec![int(1); a.num_inputs()];
        prop_assert!(mdl(&a, &unit_in).unwrap().exact <= lp.value);
        prop_assert!(ldl(&a, &unit_in).unwrap().exact <= lp.value);
    }

    #[test]
    fn integer_programs_sandwich_the_lp(a in channel()) {
        let lp = fractional_packing(&a, &LpConfig::default()).unwrap();
        let cfg = IntConfig::default();
        let p = integer_packing(&a, &cfg).unwrap();
        let k = integer_covering(&a, &cfg).unwrap();
        prop_assert!(p.optimality_proved && k.optimality_proved);
        prop_assert!(int(p.value as i64) <= lp.value);
        prop_assert!(lp.value <= int(k.value as i64));
        prop_assert!(a.is_code(&p.witness).unwrap());
        prop_assert!(a.is_output_cover(&k.witness).unwrap());
    }

    #[test]
    fn channel_text_round_trips(a in channel()) {
        let mut buf = Vec::new();
        write_channel(&a, &mut buf).unwrap();
        prop_assert_eq!(read_channel(buf.as_slice()).unwrap(), a);
    }
}

#[test]
fn lp_certificates_round_trip_and_verify() {
    let a = erasure_substitution_channel(3, 3, 1, 1).unwrap();
    let lp = fractional_packing(&a, &LpConfig::default()).unwrap();
    for (kind, w) in [(CertificateKind::Packing, &lp.primal), (CertificateKind::Cover, &lp.dual)] {
        let cert = Certificate::from_weights(kind, w);
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.verify(&a).unwrap(), lp.value);
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let a = erasure_substitution_channel(2, 4, 1, 0).unwrap();
    let lp = fractional_packing(&a, &LpConfig::default()).unwrap();
    let mut cert = Certificate::from_weights(CertificateKind::Cover, &lp.dual);
    let i = cert.values.iter().position(|v| *v > int(0)).unwrap();
    cert.values[i] = &cert.values[i] / int(2);
    assert!(cert.verify(&a).is_err());
}

#[test]
fn erasure_channels_hit_the_regular_value() {
    for (q, n, e, s) in [(2, 4, 1, 0), (2, 5, 0, 1), (3, 3, 1, 1), (3, 4, 2, 0), (4, 3, 0, 1)] {
        let a = erasure_substitution_channel(q, n, e, s).unwrap();
        let regular = regular_value(&a).expect("erasure/substitution channels are biregular");
        let simplex = LpConfig { uniform_presolve: false, ..LpConfig::default() };
        let lp = fractional_packing(&a, &simplex).unwrap();
        assert_eq!(lp.value, regular, "q={q} n={n} a={e} b={s}");
        let one = vec![int(1); a.num_outputs()];
        assert_eq!(mdu(&a, &one).unwrap().exact, regular);
    }
}
