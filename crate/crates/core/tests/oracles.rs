//! Values frozen by hand before the algorithms were written.

use noflab::bounds::*;
use noflab::protocols::*;
use noflab::search::*;
use noflab::*;

fn xor(bits: u32) -> GraphFunctionTable {
    AbelianGroup::binary(bits).unwrap().table(3).unwrap()
}

#[test]
fn alpha_of_xor4_is_eight() {
    let r = alpha_exact(&xor(2), DEFAULT_BUDGET).unwrap();
    assert!(r.exhaustive);
    assert_eq!(r.value, 8);
    assert!(is_star_free(&r.witness));
}

#[test]
fn alpha_bar_four_four_is_nine() {
    let r = alpha_bar_exact(3, 4, 4, DEFAULT_BUDGET).unwrap();
    assert!(r.exhaustive);
    assert_eq!(r.value, 9);
    assert!(is_star_free(&r.witness));
    assert!(r.witness.is_line_respecting());
}

#[test]
fn chi_of_small_xor_tables() {
    for bits in [1, 2] {
        let r = chi_exact(&xor(bits), DEFAULT_BUDGET).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.value, 2, "XOR on {bits} bits");
    }
}

#[test]
fn translate_count_for_z2_squared() {
    let g = AbelianGroup::binary(2).unwrap();
    assert_eq!(translate_count(&g, 3, 8), 17);
}

#[test]
fn base_choice() {
    assert_eq!(choose_base(1), 2);
    assert_eq!(choose_base(16), 4);
    assert_eq!(choose_base(1 << 16), 16);
    assert_eq!(choose_base(1 << 25), 32);
}

#[test]
fn least_l_values() {
    assert_eq!(least_l(1 << 4, 1 << 4).unwrap(), 1);
    assert_eq!(least_l(1 << 20, 1 << 20).unwrap(), 2);
    assert!(least_l(4, 2).is_err(), "N below n");
}

#[test]
fn exactly_fifteen_base_four() {
    let p = exactly_n_protocol(15, 4).unwrap();
    assert_eq!(p.digits(), 3);
    for (input, expected) in [([5u64, 5, 5], true), ([14, 1, 0], true), ([5, 5, 4], false), ([14, 14, 14], false)] {
        let t = run_protocol(&p, &input).unwrap();
        assert_eq!(t.output, expected, "{input:?}");
        assert_eq!(t.total_bits, p.analytic_cost());
    }
}

#[test]
fn pinned_eight_set() {
    let expected = [
        [0, 0, 0],
        [0, 1, 1],
        [1, 2, 3],
        [1, 3, 2],
        [2, 0, 2],
        [2, 1, 3],
        [3, 2, 1],
        [3, 3, 0],
    ];
    let s = z2_square_base_set();
    let got: Vec<Vec<u32>> = s.iter().map(|p| p.0.clone()).collect();
    assert_eq!(got, expected.map(|t| t.to_vec()));
    assert!(is_star_free(&s));
}

#[test]
fn vector_worked_example() {
    // Z^2, m = 3, T = (3, 3): x = (1, 1), y = (1, 1), z = (1, 1) is accepted.
    let p = ExactTVector::standard(3, 2, vec![3, 3]).unwrap();
    let one = from_digits(&[1, 1], 3);
    assert!(run_protocol(&p, &[one, one, one]).unwrap().output);
    let off = from_digits(&[0, 1], 3);
    assert!(!run_protocol(&p, &[one, one, off]).unwrap().output);
}
