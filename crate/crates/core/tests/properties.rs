use std::collections::BTreeSet;

use proptest::prelude::*;

use tcube::codec::{
    decode_well_order, emit_config, emit_schedule, encode_well_order, parse_config, parse_schedule,
    WellOrderPrefix,
};
use tcube::config::{ClusterColoring, Color, PresentedConfiguration};
use tcube::geometry::{Axis, BasicTwist, CubeVariant, ExtIndex};
use tcube::moves::SliceType;
use tcube::ordinal::OrdinalLen;
use tcube::periodic::PeriodicSet;
use tcube::perm::{Parity, Perm};
use tcube::schedule::{Schedule, ScheduleItem, Segment};
use tcube::solver::{synthesize_transition, verify_cms};

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u8).collect::<Vec<u8>>())
        .prop_shuffle()
        .prop_map(Perm::from_images)
}

fn coloring() -> impl Strategy<Value = ClusterColoring> {
    Just(ClusterColoring::solved().0)
        .prop_shuffle()
        .prop_map(ClusterColoring)
}

#[derive(Debug, Clone)]
struct SetSpec {
    modulus: u64,
    residues: Vec<u64>,
    include: Vec<u64>,
    exclude: Vec<u64>,
}

impl SetSpec {
    fn build(&self) -> PeriodicSet {
        PeriodicSet::new(
            self.modulus,
            self.residues.iter().copied(),
            self.include.iter().copied(),
            self.exclude.iter().copied(),
        )
    }

    fn contains(&self, n: u64) -> bool {
        !self.exclude.contains(&n)
            && (self.include.contains(&n) || self.residues.iter().any(|r| r % self.modulus == n % self.modulus))
    }
}

fn set_spec() -> impl Strategy<Value = SetSpec> {
    (1u64..=6)
        .prop_flat_map(|m| {
            (
                Just(m),
                proptest::collection::vec(0..m, 0..=3),
                proptest::collection::vec(1u64..40, 0..4),
                proptest::collection::vec(1u64..40, 0..4),
            )
        })
        .prop_map(|(modulus, residues, include, exclude)| SetSpec {
            modulus,
            residues,
            include,
            exclude,
        })
}

fn ordinal() -> impl Strategy<Value = OrdinalLen> {
    (0u64..4, 0u64..4, 0u64..20).prop_map(|(a, b, c)| OrdinalLen::new(a, b, c))
}

fn twist() -> impl Strategy<Value = BasicTwist> {
    (0usize..3, -6i64..=6, 1u8..=3, 0u8..6).prop_map(|(a, l, e, inf)| {
        let layer = match inf {
            0 => ExtIndex::PosInf,
            1 => ExtIndex::NegInf,
            _ => ExtIndex::from_i64(l),
        };
        BasicTwist::new(Axis::ALL[a], layer, e)
    })
}

fn item() -> impl Strategy<Value = ScheduleItem> {
    prop_oneof![
        twist().prop_map(ScheduleItem::Single),
        (0usize..3, any::<bool>(), 1u8..=3, set_spec()).prop_map(|(a, pos, e, s)| {
            ScheduleItem::parallel(SliceType::new(Axis::ALL[a], if pos { 1 } else { -1 }, e), s.build())
        }),
    ]
}

fn single_block() -> impl Strategy<Value = Vec<ScheduleItem>> {
    proptest::collection::vec(twist().prop_map(ScheduleItem::Single), 1..4)
}

fn schedule() -> impl Strategy<Value = Schedule> {
    let stages = || proptest::collection::vec(proptest::collection::vec(item(), 0..4), 1..3);
    let segment = prop_oneof![
        stages().prop_map(Segment::Stages),
        single_block().prop_map(Segment::Repeat),
        (stages(), 2u64..50).prop_map(|(st, k)| {
            Segment::Power(Box::new(Schedule::new(vec![Segment::Stages(st)]).unwrap()), k)
        }),
    ];
    proptest::collection::vec(segment, 0..3).prop_filter_map("too long", |segs| Schedule::new(segs).ok())
}

fn config() -> impl Strategy<Value = PresentedConfiguration> {
    let v = prop_oneof![
        Just(CubeVariant::ODD_EDGELESS),
        Just(CubeVariant::EVEN_EDGELESS),
        Just(CubeVariant::ODD_EDGED),
        Just(CubeVariant::EVEN_EDGED),
    ];
    (v, 1u64..=3, proptest::collection::vec(coloring(), 64), any::<bool>()).prop_map(|(v, m, colorings, nac)| {
        let classes = (0..m).map(|r| PeriodicSet::residue_class(m, r)).collect();
        let mut i = 0;
        let center = ClusterColoring(Color::FACE_COLORS.to_vec());
        PresentedConfiguration::from_rule(
            v,
            classes,
            |_, _| {
                let mut c = colorings[i % colorings.len()].clone();
                if nac && i == 0 {
                    c.0[5] = Color::NaC;
                }
                i += 1;
                c
            },
            Some(center),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perm_group_axioms(p in perm(24), q in perm(24), r in perm(24)) {
        prop_assert_eq!(p.then(&q).then(&r), p.then(&q.then(&r)));
        prop_assert_eq!(p.then(&p.invert()), Perm::identity(24));
        prop_assert_eq!(p.then(&Perm::identity(24)), p.clone());
        let sign = |x: &Perm| if x.parity() == Parity::Even { 1 } else { -1 };
        prop_assert_eq!(sign(&p.then(&q)), sign(&p) * sign(&q));
    }

    #[test]
    fn perm_order_is_least_identity_power(p in perm(12)) {
        let o = p.order();
        prop_assert!(p.pow(o).is_identity());
        for k in 1..o {
            prop_assert!(!p.pow(k).is_identity());
        }
    }

    #[test]
    fn periodic_set_matches_brute_force(a in set_spec(), b in set_spec(), k in 0u64..30) {
        let (sa, sb) = (a.build(), b.build());
        for n in 1..=200 {
            prop_assert_eq!(sa.contains(n), a.contains(n), "n = {}", n);
            prop_assert_eq!(sa.union(&sb).contains(n), a.contains(n) || b.contains(n));
            prop_assert_eq!(sa.intersect(&sb).contains(n), a.contains(n) && b.contains(n));
            prop_assert_eq!(sa.difference(&sb).contains(n), a.contains(n) && !b.contains(n));
            prop_assert_eq!(sa.complement().contains(n), !a.contains(n));
            prop_assert_eq!(sa.above(k).contains(n), n > k && a.contains(n));
        }
        let brute: Vec<u64> = (1..=200).filter(|&n| a.contains(n)).collect();
        prop_assert_eq!(sa.min(), brute.first().copied());
        prop_assert_eq!(sa.next_after(k), brute.iter().copied().find(|&n| n > k));
        if !sa.is_infinite() {
            prop_assert_eq!(sa.len(), Some(brute.len() as u64));
        }
    }

    #[test]
    fn ordinal_addition(a in ordinal(), b in ordinal(), c in ordinal(), n in 1u64..6) {
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!(a + OrdinalLen::ZERO, a);
        prop_assert_eq!(OrdinalLen::ZERO + a, a);
        prop_assert!(a <= a + b && b <= a + b);
        let repeated = (0..n).fold(OrdinalLen::ZERO, |acc, _| acc + a);
        prop_assert_eq!(a.times(n), repeated);
    }

    #[test]
    fn config_text_round_trips(cfg in config()) {
        let text = emit_config(&cfg);
        prop_assert_eq!(parse_config(&text).unwrap(), cfg);
    }

    #[test]
    fn schedule_text_round_trips(s in schedule()) {
        let text = emit_schedule(&s);
        let back = parse_schedule(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.ordinal_length(), s.ordinal_length());
    }

    #[test]
    fn well_order_prefixes_decode(order in proptest::collection::btree_set(1u64..=15, 1..=12)
        .prop_flat_map(|s| Just(s.into_iter().collect::<Vec<_>>()).prop_shuffle()))
    {
        let prefix = WellOrderPrefix::new(order.clone()).unwrap();
        let (_, cfg) = encode_well_order(&prefix, CubeVariant::EVEN_EDGELESS).unwrap();
        let sorted: Vec<u64> = order.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        prop_assert_eq!(decode_well_order(&cfg, &sorted).unwrap(), order);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn synthesized_transitions_verify(from in coloring(), to in coloring()) {
        let cms = synthesize_transition(&from, &to).unwrap();
        prop_assert!(verify_cms(&cms, &from, &to, &[(3, 1), (2, 4), (3, 3), (2, 0)]));
    }
}
