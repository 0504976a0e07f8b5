use chevalley::{Elem, Ring};
use proptest::prelude::*;

const RINGS: [&str; 6] = ["zmod:3^4", "zmod:5^3", "gf:7", "trunc:5:3", "trunc:3:2", "ext:zmod:5^2:2:3"];

fn triple() -> impl Strategy<Value = (usize, u64, u64, u64)> {
    (0..RINGS.len(), any::<u64>(), any::<u64>(), any::<u64>())
}

proptest! {
    #[test]
    fn commutative_ring((k, a, b, c) in triple()) {
        let r = Ring::parse(RINGS[k]).unwrap();
        let n = r.size();
        let (a, b, c) = (Elem(a % n), Elem(b % n), Elem(c % n));
        prop_assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.sub(a, b), r.add(a, r.neg(b)));
    }

    #[test]
    fn units_invert((k, a, _, _) in triple()) {
        let r = Ring::parse(RINGS[k]).unwrap();
        let a = Elem(a % r.size());
        match r.inv(a) {
            Some(b) => prop_assert_eq!(r.mul(a, b), r.one()),
            None => prop_assert!(!r.is_unit(a)),
        }
    }
}
