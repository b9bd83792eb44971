//! Tables printed with the classical derivation, kept verbatim (misprints
//! included) so computed results can be diffed against them.

use crate::splitting::PartRef;
use std::collections::BTreeSet;

pub const MU_257_4: &[i64] = &[2, 5, 4, 5];
/// Row 13 of the printed n = 257 set table.
pub const PRINTED_G13_257: &[u32] = &[35, 70, 117, 23, 46, 92, 73, 11];

/// Offsets `j` of the n = 257 splits printed as sufficient: `F(j,4)` at
/// step 3 and `F(j,8)` at step 4.
pub const STEP3_SPLITS_257: &[u32] = &[1, 2, 4];
pub const STEP4_SPLITS_257: &[u32] = &[1, 2, 8];

pub const MU_65537_4: &[i64] = &[992, 1040, 1024, 1040];
pub const MU_65537_8: &[i64] = &[284, 237, 272, 237, 256, 269, 256, 237];
pub const MU_65537_16: &[i64] = &[80, 62, 60, 64, 57, 60, 61, 60, 68, 64, 64, 58, 65, 70, 61, 70];

/// Printed numeric approximations for `n = 65537`: part and value.
pub const APPROX_65537: &[(&str, &str)] = &[
    ("F(1,2)", "127.501"),
    ("F(2,2)", "-128.501"),
    ("F(1,4)", "-26.58292"),
    ("F(3,4)", "154.0839"),
];

/// Printed value of `F(1,4) * F(3,4)` for `n = 65537`.
pub const APPROX_65537_PRODUCT: &str = "-4095.9999987";

/// Offsets `j` of the `F(j,1024)` splits listed as required at step 11, as printed.
pub const STEP11_SPLITS: &[u32] = &[
    1, 2, 93, 94, 150, 185, 242, 334, 784, 840, 841, 876, 932, 933, 934, 941, 968, 1024
];

/// Offsets of the `F(j,1024)` values listed as required at step 11, as printed
/// (five entries appear twice).
pub const REQUIRED_F1024: &[u32] = &[
    1, 2, 6, 14, 15, 23, 24, 25, 28, 36, 43, 58, 62, 63, 64, 68, 71, 87, 92, 93, 94, 98, 101,
    106, 116, 117, 119, 124, 125, 128, 150, 154, 155, 156, 160, 163, 173, 175, 176, 184, 185,
    186, 208, 211, 216, 217, 218, 225, 242, 247, 248, 252, 255, 265, 267, 268, 269, 276, 277,
    278, 290, 303, 304, 308, 309, 310, 334, 339, 346, 347, 357, 359, 360, 361, 369, 382, 396,
    401, 402, 426, 438, 396, 401, 402, 426, 438, 439, 440, 447, 452, 453, 458, 474, 478, 482,
    483, 488, 493, 509, 518, 530, 531, 532, 534, 535, 537, 544, 549, 550, 570, 574, 575, 576,
    583, 585, 593, 594, 600, 601, 610, 623, 624, 626, 627, 628, 629, 635, 641, 642, 643, 650,
    656, 657, 662, 666, 667, 668, 677, 680, 685, 686, 687, 692, 693, 694, 705, 715, 718, 719,
    720, 721, 733, 734, 735, 748, 749, 750, 757, 759, 760, 761, 762, 772, 777, 778, 779, 784,
    797, 807, 811, 812, 816, 826, 827, 840, 841, 842, 851, 853, 854, 855, 862, 863, 864, 868,
    870, 871, 876, 883, 889, 899, 903, 908, 918, 927, 932, 933, 934, 938, 941, 945, 946, 947,
    955, 956, 957, 960, 962, 964, 968, 975, 990, 991, 994, 995, 1000, 1019, 1024
];

/// Offsets `j <= 512` for which both `F(j,1024)` and `F(j+512,1024)` are listed.
pub const BOTH_HALVES: &[u32] = &[
    6, 23, 25, 58, 62, 63, 64, 71, 98, 116, 117, 150, 154, 155, 156, 173, 175, 208, 247, 248,
    265, 267, 304, 339, 359, 396, 426, 452, 478, 482, 483, 488
];

/// Offsets of the `F(j,512)` splits listed for step 10.
pub const STEP10_SPLITS: &[u32] = &[
    1, 2, 6, 14, 15, 18, 19, 20, 22, 23, 24, 25, 28, 32, 36, 37, 38, 43, 58, 62, 63, 64, 68, 71,
    73, 81, 82, 87, 88, 89, 92, 93, 94, 98, 101, 106, 111, 112, 114, 115, 116, 117, 119, 123,
    124, 125, 128, 129, 130, 131, 138, 144, 145, 150, 154, 155, 156, 160, 163, 165, 168, 173,
    174, 175, 176, 180, 181, 182, 184, 185, 186, 193, 203, 206, 207, 208, 209, 211, 216, 217,
    218, 221, 222, 223, 225, 236, 237, 238, 242, 245, 247, 248, 249, 250, 252, 255, 260, 265,
    266, 267, 268, 269, 272, 276, 277, 278, 285, 290, 295, 299, 300, 303, 304, 308, 309, 310,
    314, 315, 328, 329, 330, 334, 339, 341, 342, 343, 346, 347, 350, 351, 352, 356, 357, 358,
    359, 360, 361, 364, 369, 371, 377, 382, 387, 391, 396, 401, 402, 406, 415, 420, 421, 422,
    426, 429, 433, 434, 435, 438, 439, 440, 443, 444, 445, 447, 448, 450, 452, 453, 456, 458,
    463, 474, 478, 479, 482, 483, 488, 493, 507, 509, 512
];

/// Printed step-6 multiplicities `mu(k,32)`.
pub const MU_32: &[i64] = &[
    4, 12, 20, 13, 20, 18, 16, 19, 19, 22, 12, 22, 13, 13, 11, 22, 20, 15, 25, 12, 16, 12, 16,
    17, 29, 16, 7, 17, 13, 17, 13, 11
];

/// Printed groups `K(v,64)` as `(v, members)`.
pub const K_64: &[(i64, &[u32])] = &[
    (1, &[13, 24, 31, 33, 37, 38]),
    (2, &[3, 7, 9, 21, 36, 46, 56, 57]),
    (3, &[2, 15, 19, 25, 27, 28, 35, 40, 41, 42, 45, 47, 59, 61, 64]),
    (4, &[29, 32, 43, 48, 51, 52, 58, 60]),
    (5, &[4, 5, 6, 8, 11, 16, 20, 22, 23, 30, 53, 62]),
    (6, &[10, 12, 14, 17, 34, 44, 54]),
    (7, &[39, 49, 50]),
    (8, &[18, 55, 63]),
    (9, &[]),
    (10, &[26]),
];

/// Printed groups `K(v,128)` as `(v, members)`.
pub const K_128: &[(i64, &[u32])] = &[
    (1, &[2, 4, 5, 7, 8, 9, 15, 16, 17, 21, 23, 26, 27, 31, 36, 38, 46, 48, 49, 52, 57, 59, 61, 62, 81, 83, 87, 90, 91, 96, 99, 100, 111, 112, 116, 117, 119, 120, 124, 125, 126]),
    (2, &[1, 34, 35, 37, 39, 41, 42, 43, 60, 64, 68, 71, 74, 75, 77, 80, 84, 88, 89, 95, 98, 102, 104, 105, 109, 110, 118, 122, 128]),
    (3, &[11, 30, 101, 106]),
    (4, &[66, 107, 115]),
    (5, &[58]),
];

/// Printed groups `K(v,256)` as `(v, members)`.
pub const K_256: &[(i64, &[u32])] = &[
    (1, &[5, 8, 15, 20, 30, 31, 34, 38, 40, 42, 44, 45, 51, 52, 54, 57, 60, 62, 66, 69, 71, 79, 80, 82, 85, 89, 90, 107, 110, 113, 118, 125, 129, 136, 143, 147, 174, 176, 187, 188, 189, 196, 201, 213, 220, 232, 234, 244, 251, 253, 254]),
    (2, &[4, 29, 157, 186, 246]),
    (3, &[83]),
];

/// Printed groups `K(v,512)` as `(v, members)`.
pub const K_512: &[(i64, &[u32])] = &[
    (1, &[41, 49, 81, 92, 106, 109, 114, 211, 226, 233, 269, 275, 278, 281, 303, 349, 379, 390, 431, 465]),
    (2, &[68, 86, 88, 135, 175, 451]),
];

/// Offsets `j` printed with `F(j,2^(m+1)) > F(j+2^m,2^(m+1))` at step 5.
pub const GT_STEP5: &[u32] = &[
    1, 3, 4, 5, 8, 9, 10, 12, 13, 15
];

/// Offsets `j` printed with `F(j,2^(m+1)) > F(j+2^m,2^(m+1))` at step 6.
pub const GT_STEP6: &[u32] = &[
    1, 2, 4, 5, 9, 10, 11, 12, 21, 24, 28, 29, 31, 32
];

/// Offsets `j` printed with `F(j,2^(m+1)) > F(j+2^m,2^(m+1))` at step 7.
pub const GT_STEP7: &[u32] = &[
    1, 2, 3, 4, 6, 8, 10, 12, 16, 17, 18, 19, 20, 21, 24, 26, 27, 28, 29, 31, 32, 33, 34, 36,
    37, 39, 40, 42, 45, 46, 48, 50, 51, 57, 58, 59, 62, 63
];

/// Offsets `j` printed with `F(j,2^(m+1)) > F(j+2^m,2^(m+1))` at step 8.
pub const GT_STEP8: &[u32] = &[
    1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 12, 14, 16, 20, 21, 24, 25, 26, 28, 29, 30, 31, 32, 33, 34,
    35, 41, 44, 47, 49, 53, 55, 56, 60, 61, 63, 65, 66, 67, 69, 71, 72, 73, 74, 76, 77, 78, 82,
    83, 85, 91, 92, 93, 98, 100, 102, 104, 105, 107, 108, 109, 110, 111, 113, 117, 120, 121,
    124, 125, 126, 128
];

/// Offsets `j` printed with `F(j,2^(m+1)) > F(j+2^m,2^(m+1))` at step 9.
pub const GT_STEP9: &[u32] = &[
    1, 2, 3, 5, 6, 13, 14, 15, 16, 18, 19, 20, 21, 22, 23, 24, 25, 27, 30, 31, 32, 37, 38, 39,
    42, 44, 45, 46, 47, 48, 49, 52, 54, 55, 58, 59, 62, 63, 65, 66, 76, 77, 78, 79, 82, 84, 87,
    89, 90, 91, 93, 94, 96, 97, 98, 102, 103, 107, 110, 115, 117, 118, 119, 123, 127, 133, 134,
    136, 139, 144, 145, 147, 148, 149, 151, 152, 155, 156, 157, 160, 161, 162, 166, 168, 170,
    171, 180, 182, 185, 186, 187, 188, 189, 191, 194, 195, 197, 200, 203, 206, 207, 209, 210,
    213, 215, 217, 220, 221, 222, 223, 225, 230, 232, 234, 235, 236, 237, 238, 240, 241, 242,
    244, 245, 254, 255, 256
];

/// Offsets `j` printed with `F(j,2^(m+1)) > F(j+2^m,2^(m+1))` at step 10.
pub const GT_STEP10: &[u32] = &[
    1, 2, 6, 18, 22, 24, 25, 37, 62, 68, 73, 93, 94, 98, 101, 106, 112, 116, 124, 125, 131, 138,
    144, 150, 154, 155, 156, 163, 165, 168, 175, 176, 180, 182, 184, 185, 186, 206, 209, 211,
    216, 218, 221, 225, 236, 238, 242, 260, 265, 268, 269, 272, 276, 277, 295, 299, 300, 304,
    309, 310, 314, 315, 328, 330, 334, 342, 350, 352, 356, 357, 359, 360, 369, 371, 377, 382,
    387, 396, 406, 415, 426, 429, 433, 438, 440, 444, 447, 448, 452, 463, 474, 479, 482, 483,
    512
];

/// A printed ordering between the two children of one split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrintedSign {
    pub step: u32,
    pub left: PartRef,
    pub right: PartRef,
    pub left_larger: bool,
}

fn rel(step: u32, left: &str, right: &str, left_larger: bool) -> PrintedSign {
    PrintedSign {
        step,
        left: left.parse().expect("reference part"),
        right: right.parse().expect("reference part"),
        left_larger,
    }
}

/// Expands a list of offsets with `left > right` over a universe of offsets
/// for the F-step that produces stride `2^step` parts.
fn f_step(step: u32, greater: &[u32], universe: impl IntoIterator<Item = u32>, ng: u32) -> Vec<PrintedSign> {
    let s = 1u32 << step;
    let half = s / 2;
    let part = |j: u32| {
        if s == ng {
            PartRef::G { k: j, j: 1, s: 1 }
        } else {
            PartRef::F { j, s }
        }
    };
    let gt: BTreeSet<u32> = greater.iter().copied().collect();
    universe
        .into_iter()
        .map(|j| PrintedSign {
            step,
            left: part(j),
            right: part(j + half),
            left_larger: gt.contains(&j),
        })
        .collect()
}

/// Every printed ordering for `n`, in step order. Empty for moduli without
/// printed tables.
pub fn printed_signs(n: u32) -> Vec<PrintedSign> {
    match n {
        17 => vec![
            rel(1, "G1(1,1)", "G2(1,1)", true),
            rel(2, "G1(1,2)", "G1(2,2)", true),
            rel(3, "p1", "p4", true),
        ],
        257 => vec![
            rel(1, "F(1,2)", "F(2,2)", true),
            rel(2, "F(1,4)", "F(3,4)", true),
            rel(2, "F(2,4)", "F(4,4)", true),
            rel(3, "F(1,8)", "F(5,8)", true),
            rel(3, "F(2,8)", "F(6,8)", false),
            rel(3, "F(3,8)", "F(7,8)", true),
            rel(3, "F(4,8)", "F(8,8)", false),
            // Printed as "G_1 > G_8"; the sibling of G_1 is G_9.
            rel(4, "G1(1,1)", "G8(1,1)", true),
            rel(4, "G2(1,1)", "G10(1,1)", true),
            rel(4, "G3(1,1)", "G11(1,1)", true),
            rel(4, "G4(1,1)", "G12(1,1)", true),
            rel(4, "G5(1,1)", "G13(1,1)", true),
            rel(4, "G6(1,1)", "G14(1,1)", true),
            rel(4, "G7(1,1)", "G15(1,1)", false),
            rel(5, "G1(1,2)", "G1(2,2)", true),
            rel(5, "G9(1,2)", "G9(2,2)", false),
            rel(6, "G1(1,4)", "G1(3,4)", true),
            rel(6, "G1(2,4)", "G1(4,4)", true),
            rel(7, "p1", "p16", true),
        ],
        65537 => {
            let ng = 2048;
            let mut out = vec![rel(1, "F(1,2)", "F(2,2)", true)];
            out.extend(f_step(2, &[], 1..=2, ng));
            out.extend(f_step(3, &[2, 3], 1..=4, ng));
            out.extend(f_step(4, &[1, 2, 3, 5, 7], 1..=8, ng));
            out.extend(f_step(5, GT_STEP5, 1..=16, ng));
            out.extend(f_step(6, GT_STEP6, 1..=32, ng));
            out.extend(f_step(7, GT_STEP7, 1..=64, ng));
            out.extend(f_step(8, GT_STEP8, 1..=128, ng));
            out.extend(f_step(9, GT_STEP9, 1..=256, ng));
            out.extend(f_step(10, GT_STEP10, STEP10_SPLITS.iter().copied(), ng));
            out.extend(f_step(11, &[1, 2, 185, 334, 968, 1024], STEP11_SPLITS.iter().copied(), ng));
            out.push(rel(12, "G1(1,2)", "G1(2,2)", true));
            for k in [93, 933, 1025, 1117, 1957] {
                out.push(rel(12, &format!("G{k}(1,2)"), &format!("G{k}(2,2)"), false));
            }
            out.extend([
                rel(13, "G1(1,4)", "G1(3,4)", true),
                rel(13, "G1(2,4)", "G1(4,4)", true),
                rel(13, "G1025(1,4)", "G1025(3,4)", true),
                rel(13, "G1025(2,4)", "G1025(4,4)", false),
                rel(14, "G1(1,8)", "G1(5,8)", true),
                rel(14, "G1(2,8)", "G1(6,8)", true),
                rel(15, "p1", "p256", true),
            ]);
            out
        }
        _ => Vec::new(),
    }
}

/// Printed `K(v, 2^m)` groups for `n = 65537`.
pub fn printed_k_sets(m: u32) -> Option<&'static [(i64, &'static [u32])]> {
    match m {
        6 => Some(K_64),
        7 => Some(K_128),
        8 => Some(K_256),
        9 => Some(K_512),
        _ => None,
    }
}

/// Set comparison of a computed list against a printed one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ListDiff {
    /// Printed but not computed.
    pub missing: Vec<u32>,
    /// Computed but not printed.
    pub extra: Vec<u32>,
    /// Printed more than once.
    pub repeated: Vec<u32>,
}

impl ListDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.repeated.is_empty()
    }
}

pub fn diff_lists(computed: &[u32], printed: &[u32]) -> ListDiff {
    let ours: BTreeSet<u32> = computed.iter().copied().collect();
    let mut theirs = BTreeSet::new();
    let mut repeated = BTreeSet::new();
    for &x in printed {
        if !theirs.insert(x) {
            repeated.insert(x);
        }
    }
    ListDiff {
        missing: theirs.difference(&ours).copied().collect(),
        extra: ours.difference(&theirs).copied().collect(),
        repeated: repeated.into_iter().collect(),
    }
}
