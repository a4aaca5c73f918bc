use linkset::{fixtures, Matcher};

#[test]
fn every_fixture_sentence_has_one_reading() {
    let lex = fixtures::lexicon().expect("lexicon loads");
    let m = Matcher::new(&lex);
    let mut bad = Vec::new();
    for (task, doc) in fixtures::BABI_TASKS {
        for line in doc.lines() {
            let text = line.split('\t').next().unwrap();
            let text = text.split_once(' ').unwrap().1;
            match m.parse_utterance(text) {
                Ok(r) if r.len() == 1 => {}
                Ok(r) => bad.push(format!("task {task}: {text}: {} readings {:?}", r.len(), r.iter().map(|p| p.to_string()).collect::<Vec<_>>())),
                Err(e) => bad.push(format!("task {task}: {text}: {e}")),
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
