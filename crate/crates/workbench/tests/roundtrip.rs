use ambrep::dsl::{parse, render};
use ambrep::gen::{case_rng, generate_document, GeneratorConfig};
use ambrep::laws::{instance_for, Instance, Suite};
use ambrep::resolve::{resolve, ResolveOptions};
use proptest::prelude::*;

/// Blank lines, comments and extra spaces between tokens.
fn loosen(text: &str, extra: &[u8]) -> String {
    let mut out = String::new();
    for (k, line) in text.lines().enumerate() {
        let pad = extra.get(k % extra.len().max(1)).copied().unwrap_or(0) % 4;
        if pad == 3 {
            out.push_str("# noise\n\n");
        }
        let spaced = line.replace(' ', &" ".repeat(pad as usize + 1));
        out.push_str(&" ".repeat(pad as usize));
        out.push_str(&spaced);
        out.push('\n');
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>(), stream in 0u64..1000) {
        let doc = generate_document(&mut case_rng(seed, stream));
        let text = render(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(render(&back), text);
    }

    #[test]
    fn layout_does_not_matter(seed in any::<u64>(), extra in proptest::collection::vec(any::<u8>(), 1..8)) {
        let doc = generate_document(&mut case_rng(seed, 0));
        let loose = loosen(&render(&doc), &extra);
        prop_assert_eq!(parse(&loose).unwrap(), doc);
    }

    #[test]
    fn generated_instances_survive_text(seed in any::<u64>(), case in 0usize..40, suite in 0usize..5) {
        let suite = Suite::MODULES[suite];
        let cfg = GeneratorConfig { seed, cases: 30, ..GeneratorConfig::default() };
        let inst = instance_for(suite, &cfg, case);
        let doc = parse(&inst.to_dsl()).unwrap();
        prop_assert_eq!(&doc, &inst.to_document());
        let r = resolve(&doc, ResolveOptions::default()).unwrap();
        let back = Instance::from_resolved(&doc, &r);
        prop_assert_eq!(render(&back.to_document()), render(&doc));
    }
}
