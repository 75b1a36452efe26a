use std::collections::BTreeMap;

use dtilde::coeffq::{f_t1, f_t2};
use dtilde::laurent::{
    evaluate_ones, from_json, gen_binomial, parse_poly, parse_with_denominator,
    render_with_denominator, substitute, to_json, to_polynomial, LaurentPoly, Monomial,
    RationalFunction, VarId,
};
use dtilde::Error;
use num_bigint::BigInt;

const Q0: VarId = VarId::Inner(0);
const Q1: VarId = VarId::Inner(1);
const Q2: VarId = VarId::Inner(2);

fn p(s: &str) -> LaurentPoly {
    parse_poly(s).unwrap()
}

#[test]
fn product_with_one_is_identity() {
    let f = LaurentPoly::one_plus(Q0, 1);
    assert_eq!(&f * &LaurentPoly::one(), f);
}

#[test]
fn square_of_one_plus_x() {
    let f = LaurentPoly::one_plus(Q0, 1);
    assert_eq!(&f * &f, p("1 + 2*x_0 + x_0^2"));
}

#[test]
fn product_of_rank_two_quasi_simples() {
    let prod = &f_t1() * &f_t2();
    // 25 products collapse to 24 monomials: x_0 arises as x_0·1 and 1·x_0
    assert_eq!(prod.len(), 24);
    assert_eq!(prod.coeff(&Monomial::var_pow(Q0, 1)), BigInt::from(2));
    assert_eq!(prod.evaluate_ones(), BigInt::from(25));
    // second multiplier: expand term by term
    let mut by_hand = LaurentPoly::zero();
    for (m1, c1) in f_t1().terms() {
        for (m2, c2) in f_t2().terms() {
            by_hand.add_term(m1.mul(m2), c1 * c2);
        }
    }
    assert_eq!(prod, by_hand);
}

#[test]
fn invert_a_variable() {
    let f = LaurentPoly::one_plus(Q0, 1);
    let mut map = BTreeMap::new();
    map.insert(Q0, RationalFunction::from_poly(LaurentPoly::monomial(Monomial::var_pow(Q0, -1))));
    let r = substitute(&f, &map);
    assert_eq!(to_polynomial(&r).unwrap(), LaurentPoly::one_plus(Q0, -1));
}

#[test]
fn grow_substitution() {
    let mut map = BTreeMap::new();
    map.insert(Q0, RationalFunction::from_poly(p("x_0 + x_0*x_1")));
    let r = substitute(&LaurentPoly::var(Q0), &map);
    assert_eq!(to_polynomial(&r).unwrap(), p("x_0 + x_0*x_1"));
}

#[test]
fn shrink_substitution_stays_rational() {
    let mut map = BTreeMap::new();
    map.insert(Q2, RationalFunction::new(p("x_2*x_1"), LaurentPoly::one_plus(Q1, 1)));
    let r = substitute(&LaurentPoly::var(Q2), &map);
    assert!(!r.is_polynomial());
    assert!(matches!(to_polynomial(&r), Err(Error::NotDivisible(_))));
    let cleared = r.mul_poly(&LaurentPoly::one_plus(Q1, 1));
    assert_eq!(to_polynomial(&cleared).unwrap(), p("x_1*x_2"));
}

#[test]
fn exact_quotients() {
    let inv = LaurentPoly::one_plus(Q0, -1);
    let r = RationalFunction::new(inv.clone(), inv.clone());
    assert_eq!(to_polynomial(&r).unwrap(), LaurentPoly::one());
    let r = RationalFunction::new(LaurentPoly::one_plus(Q0, 1), inv.clone());
    assert_eq!(to_polynomial(&r).unwrap(), LaurentPoly::var(Q0));
    let sq = LaurentPoly::one_plus(Q0, 1).pow(2);
    let zero = &(&sq - &LaurentPoly::one()) - &p("2*x_0");
    let zero = &zero - &p("x_0^2");
    let r = RationalFunction::new(zero, p("3 + x_a"));
    assert!(to_polynomial(&r).unwrap().is_zero());
}

#[test]
fn indivisible_quotient_is_reported() {
    let r = RationalFunction::new(p("1 + x_0^2"), LaurentPoly::one_plus(Q0, 1));
    assert!(matches!(to_polynomial(&r), Err(Error::NotDivisible(_))));
}

#[test]
fn generalized_binomials() {
    assert_eq!(gen_binomial(5, 2), BigInt::from(10));
    assert_eq!(gen_binomial(-1, 2), BigInt::from(1));
    for n in -5..6 {
        assert_eq!(gen_binomial(n, 0), BigInt::from(1));
    }
    assert_eq!(gen_binomial(-2, 3), BigInt::from(-4));
    assert_eq!(gen_binomial(3, 5), BigInt::from(0));
}

#[test]
fn specialization_at_ones() {
    assert_eq!(evaluate_ones(&LaurentPoly::one_plus(Q0, 1)), BigInt::from(2));
    assert_eq!(evaluate_ones(&p("1 + x_0 + x_0*x_a + x_0*x_c + x_0*x_a*x_c")), BigInt::from(5));
    assert_eq!(f_t1().evaluate_ones(), BigInt::from(5));
    assert_eq!(evaluate_ones(&LaurentPoly::zero()), BigInt::from(0));
}

#[test]
fn canonical_rendering_orders_variables() {
    let f = p("x_d + x_c*x_a + 1 + x_0^-1 + x_b");
    assert_eq!(f.render(), "x_0^-1 + 1 + x_b + x_d + x_a*x_c");
    assert_eq!(parse_poly(&f.render()).unwrap(), f);
    assert_eq!(LaurentPoly::zero().render(), "0");
}

#[test]
fn json_round_trip() {
    let f = &f_t1() * &p("1 - 7*x_d^-2");
    let j = to_json(&f);
    assert_eq!(from_json(&j).unwrap(), f);
    let back: serde_json::Value = serde_json::from_str(&j.to_string()).unwrap();
    assert_eq!(from_json(&back).unwrap(), f);
}

#[test]
fn denominator_rendering_round_trip() {
    let f = p("x_a^-1 + x_a^-1*x_0");
    assert_eq!(render_with_denominator(&f), "(1 + x_0) / x_a");
    assert_eq!(parse_with_denominator("(1 + x_0) / x_a").unwrap(), f);
}

#[test]
fn malformed_text_is_rejected() {
    for bad in ["", "1 +", "x_q", "2**x_0", "x_0^a"] {
        assert!(matches!(parse_poly(bad), Err(Error::Parse(_))), "{bad}");
    }
}

#[test]
fn exact_division_by_powers() {
    let base = LaurentPoly::one_plus(Q0, 1);
    let f = &base.pow(3) * &p("x_a - 2*x_b");
    assert_eq!(f.div_exact(&base.pow(2)).unwrap(), &base * &p("x_a - 2*x_b"));
    assert!(matches!(
        f.div_exact(&LaurentPoly::one_plus(VarId::C, 1)),
        Err(Error::NotDivisible(_))
    ));
}
