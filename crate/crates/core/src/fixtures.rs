//! Bundled example graphs and extensions, in the extension text format.

use crate::extension::{parse_extension, SinkExtension};

pub const G_INTRO: &str = "\
v w1
v w2
v w3
e a w1 w1
e b w1 w2
e c w2 w3
e d w3 w2
";

pub const E1_INTRO: &str = "\
v w1 base
v w2 base
v w3 base
v v1 ext
e a w1 w1 base
e b w1 w2 base
e c w2 w3 base
e d w3 w2 base
e w1-v1:1 w1 v1 ext
e w2-v1:1 w2 v1 ext
e w3-v1:1 w3 v1 ext
e w3-v1:2 w3 v1 ext
sink v1
";

pub const E2_INTRO: &str = "\
v w1 base
v w2 base
v w3 base
v v2 ext
e a w1 w1 base
e b w1 w2 base
e c w2 w3 base
e d w3 w2 base
e w1-v2:1 w1 v2 ext
e w3-v2:1 w3 v2 ext
e w3-v2:2 w3 v2 ext
e w3-v2:3 w3 v2 ext
sink v2
";

pub const F_INTRO: &str = "\
v w1 base
v w2 base
v w3 base
v v1 ext
e a w1 w1 base
e b w1 w2 base
e c w2 w3 base
e d w3 w2 base
e w1-v1:1 w1 v1 ext
e w1-v1:2 w1 v1 ext
e w3-v1:1 w3 v1 ext
e w3-v1:2 w3 v1 ext
e w3-v1:3 w3 v1 ext
sink v1
";

pub const Z_FIG: &str = "\
v w base
v z base
v v ext
e f z w base
e g w z base
e h z z base
e e z v ext
sink v
";

pub const Z_FIG_SPLIT: &str = "\
v w base
v z base
v v ext
v z'1 ext
e f z w base
e g w z base
e h z z base
e e' z'1 v ext
e g' w z'1 ext
e h' z z'1 ext
sink v
";

pub const G_EX26: &str = "\
v w1
v w2
e a1 w1 w1
e a2 w1 w1
e b w1 w2
e c1 w2 w2
e c2 w2 w2
";

pub const E1_EX26: &str = "\
v w1 base
v w2 base
v v1 ext
e a1 w1 w1 base
e a2 w1 w1 base
e b w1 w2 base
e c1 w2 w2 base
e c2 w2 w2 base
e w1-v1:1 w1 v1 ext
sink v1
";

pub const E2_EX26: &str = "\
v w1 base
v w2 base
v v2 ext
e a1 w1 w1 base
e a2 w1 w1 base
e b w1 w2 base
e c1 w2 w2 base
e c2 w2 w2 base
e w2-v2:1 w2 v2 ext
sink v2
";

pub const G_O3: &str = "\
v w
e l1 w w
e l2 w w
e l3 w w
";

pub const O3_W1: &str = "\
v w base
v v1 ext
e l1 w w base
e l2 w w base
e l3 w w base
e w-v1:1 w v1 ext
sink v1
";

pub const O3_W2: &str = "\
v w base
v v1 ext
e l1 w w base
e l2 w w base
e l3 w w base
e w-v1:1 w v1 ext
e w-v1:2 w v1 ext
sink v1
";

/// `(name, text)` for every bundled fixture.
pub const ALL: &[(&str, &str)] = &[
    ("G_intro", G_INTRO),
    ("E1_intro", E1_INTRO),
    ("E2_intro", E2_INTRO),
    ("F_intro", F_INTRO),
    ("Z_fig", Z_FIG),
    ("Z_fig_split", Z_FIG_SPLIT),
    ("G_ex26", G_EX26),
    ("E1_ex26", E1_EX26),
    ("E2_ex26", E2_EX26),
    ("G_o3", G_O3),
    ("o3_w1", O3_W1),
    ("o3_w2", O3_W2),
];

/// Parsed fixture by name. Base graphs load as extensions with no sinks.
pub fn load(name: &str) -> Option<SinkExtension> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, text)| parse_extension(text).expect("bundled fixtures are valid"))
}

/// File name used when fixtures are written to disk.
pub fn file_name(name: &str) -> String {
    format!("{name}.ext")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for (name, _) in ALL {
            assert!(load(name).is_some(), "{name}");
        }
        assert!(load("nope").is_none());
    }
}
