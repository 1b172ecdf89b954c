use num_rational::Rational64;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use rspace_core::coeffs::{coeff_c_closed, coeff_c_direct, coeff_triple};
use rspace_core::ktype::{enumerate_box, pi, KType};
use rspace_core::root_data::{catalogue, make_case, CaseSpec, Family};
use rspace_core::scalar::{rat, Rational};
use rspace_core::series::{build_graph, composition_series_closed, default_bound, reducibility, SpectralParam};
use rspace_core::unitarity::{spectrum_by_recurrence, unitary_constituents, GammaRatio, IntertwinerSpectrum};
use rspace_core::{CoeffTripleF64, CoeffTripleQ};

fn small_cases() -> Vec<CaseSpec> {
    let mut v = catalogue();
    v.push(make_case(Family::SlReal { r: 2, s: 4 }).unwrap());
    v.push(make_case(Family::SoSplit { r: 3 }).unwrap());
    v
}

fn case_and_weight() -> impl Strategy<Value = (CaseSpec, KType)> {
    (0..small_cases().len(), any::<prop::sample::Index>()).prop_map(|(ci, idx)| {
        let case = small_cases().swap_remove(ci);
        let bx = enumerate_box(&case, 5);
        let m = idx.get(bx.members()).clone();
        (case, m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pi_increases_along_edges((case, m) in case_and_weight()) {
        for j in 1..=case.rank() {
            if let Some(up) = m.raised(j) {
                prop_assert!(pi::<Rational>(&case, &up) > pi::<Rational>(&case, &m));
            }
        }
    }

    #[test]
    fn scalar_types_agree((case, m) in case_and_weight()) {
        let exact: CoeffTripleQ = coeff_triple(&case, &m).unwrap();
        let float: CoeffTripleF64 = coeff_triple(&case, &m).unwrap();
        let small: Rational64 = coeff_c_direct(&case, &m).unwrap();
        prop_assert_eq!(Rational::new((*small.numer()).into(), (*small.denom()).into()), exact.c.clone());
        let c64: f64 = num_traits::ToPrimitive::to_f64(&exact.c).unwrap();
        prop_assert!((float.c - c64).abs() < 1e-9);
        let closed32: f32 = coeff_c_closed(&case, &m).unwrap();
        prop_assert!((closed32 as f64 - c64).abs() < 1e-3);
        for (a, b) in exact.a.iter().zip(&float.a) {
            prop_assert_eq!(a.is_zero(), *b == 0.0);
        }
    }

    #[test]
    fn reducible_iff_not_strongly_connected(ci in 0..small_cases().len(), num in -40i64..=40, den in 1i64..=4) {
        let case = small_cases().swap_remove(ci);
        let q = rat(num, den);
        let nu = SpectralParam::real(q.clone());
        let graph = build_graph(&case, &nu, default_bound(&case, &q)).unwrap();
        prop_assert_eq!(reducibility(&case, &nu).reducible, !graph.is_strongly_connected());
    }
}

#[test]
fn json_round_trips() {
    let e66 = make_case(Family::E6Split).unwrap();
    let json = serde_json::to_string(&e66).unwrap();
    assert_eq!(serde_json::from_str::<CaseSpec>(&json).unwrap(), e66);

    let nu = SpectralParam::real(rat(-3, 2));
    let cs = composition_series_closed(&e66, &nu).unwrap();
    let json = serde_json::to_string(&cs).unwrap();
    assert!(json.contains("\"-3/2\""));
    assert_eq!(serde_json::from_str::<rspace_core::CompositionSeries>(&json).unwrap(), cs);

    let spec = spectrum_by_recurrence(&e66, &nu, 0, 6).unwrap();
    let json = serde_json::to_string(&spec).unwrap();
    assert!(json.contains(r#"{"m":[1,0],"t":"3/1"}"#));
    assert_eq!(serde_json::from_str::<IntertwinerSpectrum>(&json).unwrap(), spec);

    let g = unitary_constituents(&e66, &nu)[0].spectrum.clone().unwrap();
    let json = serde_json::to_string(&g).unwrap();
    assert_eq!(serde_json::from_str::<GammaRatio>(&json).unwrap(), g);
}

#[test]
fn unitary_spectra_are_positive_on_larger_boxes() {
    for r in 2..=3 {
        let case = make_case(Family::SoComplex { r }).unwrap();
        for v in unitary_constituents(&case, &SpectralParam::real(rat(-2 * r as i64, 1))) {
            if v.unitary {
                let s = spectrum_by_recurrence(&case, &SpectralParam::real(rat(-2 * r as i64, 1)), v.layer, 10).unwrap();
                assert!(s.entries.iter().all(|e| e.t.is_positive()));
            }
        }
    }
}
