use proptest::prelude::*;

use kwsum_core::closed_form::{theorem1_table, theorem2_table, theorem3_corrected_table};
use kwsum_core::codes::codeword;
use kwsum_core::exp_sums::s_naive;
use kwsum_core::sequences::{correlation, SeqId};
use kwsum_core::{validate_params, Context, FieldElement};

fn seq(q: u32, r: u32) -> SeqId {
    let r = r % (q * q + q + 1);
    if r < q * q {
        SeqId::F1 {
            alpha: FieldElement(r / q),
            beta: FieldElement(r % q),
        }
    } else if r < q * q + q {
        SeqId::F2 {
            alpha: FieldElement(r - q * q),
        }
    } else {
        SeqId::F2Singleton
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn correlation_matches_reduction(k in prop::sample::select(vec![1u32, 2, 3]), a in any::<u32>(), b in any::<u32>(), tau in 0u64..127) {
        let ctx = Context::new(7, k).unwrap();
        let v = correlation(&ctx, seq(128, a), seq(128, b), tau).unwrap();
        prop_assert!(v.abs() <= 127);
    }

    #[test]
    fn codeword_weight_is_affine_in_s(a in 0u32..512, b in 0u32..512, g in 0u32..512) {
        let ctx = Context::new(9, 2).unwrap();
        let (a, b, g) = (FieldElement(a), FieldElement(b), FieldElement(g));
        let w = codeword(&ctx, a, b, Some(g)).weight() as i64;
        prop_assert_eq!(w, 256 - s_naive(&ctx, a, b, g).value / 2);
    }

    #[test]
    fn shift_zero_autocorrelation_is_full(k in prop::sample::select(vec![1u32, 2]), r in any::<u32>()) {
        let ctx = Context::new(5, k).unwrap();
        let id = seq(32, r);
        prop_assert_eq!(correlation(&ctx, id, id, 0).unwrap(), 31);
    }
}

#[test]
fn closed_tables_are_integral_with_exact_totals() {
    for n in 3..=24u32 {
        for k in 1..n {
            let Ok(p) = validate_params(n, k) else { continue };
            if p.code_degenerate {
                continue;
            }
            let t = theorem1_table(&p).to_distribution(&p).unwrap();
            assert_eq!(t.total(), 1u128 << (2 * n), "n={n} k={k}");
            assert_eq!(t.moment(1), 1i128 << (2 * n), "n={n} k={k}");
            let s = theorem2_table(&p).to_distribution(&p).unwrap();
            assert_eq!(s.total(), 1u128 << (3 * n), "n={n} k={k}");
            if p.sequence_valid {
                let c = theorem3_corrected_table(&p).to_distribution(&p).unwrap();
                let f = p.family_size() as u128;
                assert_eq!(c.total(), f * f * ((1u128 << n) - 1), "n={n} k={k}");
            }
        }
    }
}
