use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use termirial_core::fractal::{
    build, measured_ratio, ratio_closed_form, surface_report, Format, DEFAULT_CELL_BUDGET,
};
use termirial_core::loopnest::{analyze, parse, simulate, BoundRef, Loop, LoopNestProgram};
use termirial_core::{binomial, termirial_p, Order, DEFAULT_BUDGET};

#[test]
fn simulator_agrees_with_analysis() {
    for d in 1..=5 {
        for n in 1..=30 {
            let prog = LoopNestProgram::chain("n", Some(n), d);
            let r = analyze(&prog);
            let sim = simulate(&prog, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(Some(&sim), r.exact_count.as_ref(), "d={d} n={n}");
            assert_eq!(sim, binomial(n + d as u64 - 1, d as u64));
            assert_eq!(r.theta_exponent, d as u64);
        }
    }
}

#[test]
fn figure_counts() {
    for n in 1..=10 {
        for p in 0..=8 {
            let f = build(n, p, DEFAULT_CELL_BUDGET).unwrap();
            assert_eq!(BigUint::from(f.count()), termirial_p(n, Order::from(p)));
            assert_eq!(f.render(Format::Ascii).matches('#').count(), f.count());
        }
    }
}

#[test]
fn measured_ratio_matches_closed_form() {
    for n in 1..=10 {
        for p in 1..=8 {
            let coarse = build(n, p - 1, DEFAULT_CELL_BUDGET).unwrap();
            let fine = build(n, p, DEFAULT_CELL_BUDGET).unwrap();
            let measured = measured_ratio(&coarse, &fine).unwrap();
            assert_eq!(measured, ratio_closed_form(n, p), "n={n} p={p}");
            assert_eq!(measured, surface_report(n, p).unwrap().ratio);
        }
    }
}

#[test]
fn ratio_rises_toward_four() {
    let four = BigRational::from_integer(BigInt::from(4));
    for n in 1..=10 {
        for p in 1..50 {
            let a = ratio_closed_form(n, p);
            let b = ratio_closed_form(n, p + 1);
            if n == 1 {
                assert_eq!(a, four);
                assert_eq!(b, four);
            } else {
                assert!(a < b && b < four, "n={n} p={p}");
            }
            let d = surface_report(n, p).unwrap().dimension_estimate;
            assert!(d <= 2.0);
        }
    }
}

fn program_strategy() -> impl Strategy<Value = LoopNestProgram> {
    let ident = "[a-zA-Z][a-zA-Z0-9_]{0,6}".prop_filter("keyword", |s| {
        !s.eq_ignore_ascii_case("for") && !s.eq_ignore_ascii_case("to")
    });
    (
        prop::collection::hash_set(ident, 2..7),
        prop::option::of(any::<u64>()),
    )
        .prop_map(|(names, value)| {
            let mut names: Vec<String> = names.into_iter().collect();
            names.sort();
            let param_name = names.remove(0);
            let loops = names
                .iter()
                .enumerate()
                .map(|(i, name)| Loop {
                    index: name.clone(),
                    bound: if i == 0 {
                        BoundRef::Param
                    } else {
                        BoundRef::Index(names[i - 1].clone())
                    },
                })
                .collect();
            LoopNestProgram {
                param_name,
                param_value: value,
                loops,
            }
        })
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(prog in program_strategy()) {
        prop_assert_eq!(parse(&prog.render()).unwrap(), prog);
    }

    #[test]
    fn parser_never_panics(src in "[ -~\n\t]{0,80}") {
        let _ = parse(&src);
    }

    #[test]
    fn parser_errors_point_inside_input(src in "(for|to|=|1|n|i|j|x| |#|\n){0,24}") {
        if let Err(e) = parse(&src) {
            let lines: Vec<&str> = src.split('\n').collect();
            prop_assert!(e.line >= 1 && e.line <= lines.len());
            prop_assert!(e.column >= 1 && e.column <= lines[e.line - 1].chars().count() + 1);
        }
    }
}
