//! Property tests for the algebraic laws that the table validators check
//! exhaustively on fixed instances: random sampling over enumerated levels
//! keeps the encode/decode and two-route identities honest without
//! hand-picking simplices.

use catelem::elements::double_category_of_elements;
use catelem::fixtures;
use catelem::nerve::nerve_double_category;
use catelem::simplicial::diagonal;
use catelem::thomason::{
    decode_double_side, decode_two_side, encode_double_side, encode_two_side, phi, theta,
    ThomasonContext,
};
use proptest::prelude::*;

const DIM: usize = 3;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Any enumerated bar simplex round-trips through its triangular data,
    /// and the two comparison maps invert each other on it.
    #[test]
    fn bar_simplices_round_trip(level in 0usize..=DIM, seed in any::<u32>()) {
        let f = fixtures::build("walking_two_cell").unwrap();
        let ctx = ThomasonContext::build(&f, DIM).unwrap();
        let n_two = ctx.bar2.level_size(level);
        let n_dbl = ctx.bard.level_size(level);
        prop_assume!(n_two > 0 && n_dbl > 0);

        let s = seed as usize % n_two;
        let data = encode_two_side(&ctx, level, s);
        prop_assert_eq!(decode_two_side(&ctx, &data), Some(s));
        let image = phi(&ctx, &data);
        prop_assert_eq!(&theta(&ctx, &image), &data);

        let t = seed as usize % n_dbl;
        let dbl = encode_double_side(&ctx, level, t);
        prop_assert_eq!(decode_double_side(&ctx, &dbl), Some(t));
        let back = theta(&ctx, &dbl);
        prop_assert_eq!(&phi(&ctx, &back), &dbl);
    }

    /// The diagonal face can be computed along either route — vertical then
    /// horizontal or horizontal then vertical — with the same result.
    #[test]
    fn diagonal_faces_agree_along_both_routes(
        fixture in prop::sample::select(vec!["walking_two_cell", "poset_discrete", "walking_arrow_coeff"]),
        k in 1usize..=DIM,
        i_seed in any::<u32>(),
        s_seed in any::<u32>(),
    ) {
        let f = fixtures::build(fixture).unwrap();
        let el = double_category_of_elements(&f);
        let x = nerve_double_category(&el.double_cat, DIM).unwrap();
        let d = diagonal(&x);
        let count = x.level(k, k).len();
        prop_assume!(count > 0);
        let s = s_seed as usize % count;
        let i = i_seed as usize % (k + 1);
        let via_v_then_h = x.h_face(k, k - 1, i, x.v_face(k, k, i, s));
        let via_h_then_v = x.v_face(k - 1, k, i, x.h_face(k, k, i, s));
        prop_assert_eq!(via_v_then_h, via_h_then_v);
        prop_assert_eq!(d.face(k, i, s), via_v_then_h);
    }
}
