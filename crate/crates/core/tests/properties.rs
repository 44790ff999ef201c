use nnv_core::{
    cubic_kernel, nnv_pixel, resample_nnv, Image, Method, NeighborSet, ScaleSpec, SourceLocus,
};
use proptest::prelude::*;

fn arb_image() -> impl Strategy<Value = Image> {
    (1usize..=9, 1usize..=9).prop_flat_map(|(w, h)| {
        proptest::collection::vec(any::<u8>(), w * h)
            .prop_map(move |px| Image::from_u8(w, h, px).unwrap())
    })
}

fn arb_method() -> impl Strategy<Value = Method> {
    proptest::sample::select(Method::ALL.to_vec())
}

proptest! {
    #[test]
    fn nnv_output_comes_from_its_cell(img in arb_image(), n in 1usize..=5) {
        let out = resample_nnv(&img, ScaleSpec::new(n).unwrap());
        for y in 0..out.height() {
            for x in 0..out.width() {
                let l = SourceLocus::for_output(x, y, img.width(), img.height(), n);
                prop_assert!(l.corners(&img).contains(&out.get(x, y)));
            }
        }
    }

    #[test]
    fn sample_sites_are_preserved(img in arb_image(), method in arb_method(), n in 1usize..=4) {
        let out = method.resample(&img, ScaleSpec::new(n).unwrap());
        prop_assert_eq!((out.width(), out.height()), (img.width() * n, img.height() * n));
        for y in 0..img.height() {
            for x in 0..img.width() {
                prop_assert_eq!(out.get(n * x, n * y), img.get(x, y));
            }
        }
    }

    #[test]
    fn constant_stays_constant(w in 1usize..6, h in 1usize..6, v in any::<u8>(),
                               method in arb_method(), n in 1usize..=4) {
        let out = method.resample(&Image::filled(w, h, v).unwrap(), ScaleSpec::new(n).unwrap());
        prop_assert!(out.pixels().iter().all(|&p| p == v));
    }

    #[test]
    fn output_respects_max_value(w in 1usize..6, h in 1usize..6, max in 1u8..=255,
                                 seed in proptest::collection::vec(any::<u8>(), 36),
                                 method in arb_method(), n in 1usize..=4) {
        let px = seed[..w * h].iter().map(|&v| (u16::from(v) % (u16::from(max) + 1)) as u8).collect();
        let img = Image::new(w, h, max, px).unwrap();
        let out = method.resample(&img, ScaleSpec::new(n).unwrap());
        prop_assert_eq!(out.max_value(), max);
        prop_assert!(out.pixels().iter().all(|&p| p <= max));
    }

    #[test]
    fn resampling_is_deterministic(img in arb_image(), method in arb_method(), n in 1usize..=4) {
        let spec = ScaleSpec::new(n).unwrap();
        prop_assert_eq!(method.resample(&img, spec), method.resample(&img, spec));
    }

    #[test]
    fn triple_wins_regardless_of_offsets(v in any::<u8>(), odd in any::<u8>(), slot in 0usize..4,
                                         dx in 0.0f64..1.0, dy in 0.0f64..1.0) {
        let mut vals = [v; 4];
        vals[slot] = odd;
        prop_assert_eq!(nnv_pixel(&NeighborSet::new(vals, dx, dy)), v);
    }

    #[test]
    fn cubic_weights_sum_to_one(t in 0.0f64..1.0) {
        let s = cubic_kernel(-1.0 - t) + cubic_kernel(-t) + cubic_kernel(1.0 - t) + cubic_kernel(2.0 - t);
        prop_assert!((s - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn one_pixel_source_fills_output() {
    let img = Image::from_u8(1, 1, vec![42]).unwrap();
    for method in Method::ALL {
        let out = method.resample(&img, ScaleSpec::new(4).unwrap());
        assert_eq!((out.width(), out.height()), (4, 4));
        assert!(out.pixels().iter().all(|&p| p == 42), "{method}");
    }
}

#[test]
fn nnv_keeps_hard_edges_hard() {
    // A vertical step edge: NNV and NN emit only the two source levels,
    // bilinear introduces intermediate values.
    let img = Image::from_fn(4, 4, 255, |x, _| if x < 2 { 0 } else { 200 }).unwrap();
    let spec = ScaleSpec::new(4).unwrap();
    let nnv = resample_nnv(&img, spec);
    assert!(nnv.pixels().iter().all(|&p| p == 0 || p == 200));
    let bil = Method::Bilinear.resample(&img, spec);
    assert!(bil.pixels().iter().any(|&p| p != 0 && p != 200));
}
