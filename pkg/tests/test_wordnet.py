import shutil

import pytest
from hypothesis import given, settings, strategies as st

from latticeforge.errors import ConfigurationError, MissingDatabaseFile, ParseError
from latticeforge.wordnet import (EmptyLexicon, Pos, StubLexicon, WordNetLexicon, are_synonyms,
                                  load_db, morphy, most_general_within, normalize_lemma,
                                  resolve_wordnet_dir)

from conftest import MINI_WORDNET

NOUNS = ["dog", "canine", "cat", "feline", "animal", "entity", "car", "automobile", "vehicle",
         "museum", "building", "red", "carmine", "colour", "color", "trip", "excursion", "bike",
         "bicycle", "apartment", "history", "culture", "body"]
VERBS = ["drive", "ride", "book", "reserve", "rent", "walk", "travel", "go", "move", "house",
         "dedicate", "originate", "sponsor", "charge", "be"]


@pytest.fixture(params=["mini", "full"], scope="module")
def db(request):
    return request.getfixturevalue(f"{request.param}_db")


class TestLoad:
    def test_lookup(self, db):
        assert db.lookup("cat", Pos.NOUN)
        assert ("cat", Pos.NOUN) in db
        assert not db.lookup("xyzzy", Pos.NOUN)

    def test_missing_files(self, tmp_path):
        with pytest.raises(MissingDatabaseFile):
            load_db(tmp_path)

    def test_missing_one_file(self, tmp_path):
        for f in MINI_WORDNET.iterdir():
            shutil.copy(f, tmp_path)
        (tmp_path / "verb.exc").unlink()
        with pytest.raises(MissingDatabaseFile):
            load_db(tmp_path)

    def test_truncated_data_file(self, tmp_path):
        for f in MINI_WORDNET.iterdir():
            shutil.copy(f, tmp_path)
        data = (tmp_path / "data.noun").read_bytes()
        (tmp_path / "data.noun").write_bytes(data[: len(data) // 2])
        with pytest.raises(ParseError) as info:
            load_db(tmp_path)
        assert "data.noun" in str(info.value)

    def test_garbled_line_reports_line_number(self, tmp_path):
        for f in MINI_WORDNET.iterdir():
            shutil.copy(f, tmp_path)
        lines = (tmp_path / "data.verb").read_text().splitlines(keepends=True)
        target = next(k for k, line in enumerate(lines) if not line.startswith("  "))
        lines[target] = "garbage" + lines[target][7:]
        (tmp_path / "data.verb").write_text("".join(lines))
        with pytest.raises(ParseError) as info:
            load_db(tmp_path)
        assert info.value.line == target + 1

    def test_resolve_from_env(self, tmp_path, monkeypatch):
        (tmp_path / "dict").mkdir()
        monkeypatch.setenv("WNHOME", str(tmp_path))
        assert resolve_wordnet_dir(None) == tmp_path / "dict"
        assert resolve_wordnet_dir(MINI_WORDNET) == MINI_WORDNET

    def test_resolve_nothing(self, monkeypatch):
        monkeypatch.delenv("WNHOME", raising=False)
        with pytest.raises(ConfigurationError):
            resolve_wordnet_dir(None)

    def test_hypernyms_stay_in_pos(self, mini_db):
        for synset in mini_db.synsets.values():
            assert synset.words
            for parent in synset.hypernym_ids:
                assert parent[1] == synset.id[1]


class TestMorphy:
    @pytest.mark.parametrize("word,pos,expected", [
        ("drove", Pos.VERB, ["drive"]),
        ("walked", Pos.VERB, ["walk"]),
        ("cats", Pos.NOUN, ["cat"]),
        ("driving", Pos.VERB, ["drive"]),
        ("products", Pos.NOUN, ["product"]),
        ("boxes", Pos.NOUN, ["box"]),
        ("museums", Pos.NOUN, ["museum"]),
        ("xyzzy", Pos.NOUN, []),
        ("", Pos.NOUN, []),
    ])
    def test_examples(self, db, word, pos, expected):
        assert morphy(db, word, pos) == expected

    def test_indexed_word_comes_first(self, db):
        assert morphy(db, "cat", Pos.NOUN)[0] == "cat"

    def test_exception_list(self, db):
        assert morphy(db, "went", Pos.VERB) == ["go"]
        assert morphy(db, "ran", Pos.VERB) == ["run"]
        # "men" is itself a noun, so it precedes its exception-list base
        assert morphy(db, "men", Pos.NOUN) == ["men", "man"]

    def test_collocation_normalization(self, db):
        assert normalize_lemma("Motor Bike") == "motor_bike"
        assert normalize_lemma("motor-bike") == "motor_bike"

    @pytest.mark.parametrize("word", ["drove", "walked", "cats", "houses", "museums", "rented"])
    def test_idempotent(self, db, word):
        for pos in Pos:
            for lemma in morphy(db, word, pos):
                assert morphy(db, lemma, pos)[0] == lemma


class TestSynonyms:
    def test_examples(self, db):
        assert are_synonyms(db, "car", "automobile", Pos.NOUN)
        assert not are_synonyms(db, "cat", "dog", Pos.NOUN)
        assert are_synonyms(db, "trip", "trip", Pos.NOUN)

    @pytest.mark.parametrize("a", NOUNS[:8])
    def test_symmetric(self, db, a):
        for b in NOUNS:
            assert are_synonyms(db, a, b, Pos.NOUN) == are_synonyms(db, b, a, Pos.NOUN)


class TestMostGeneral:
    def test_examples(self, db):
        assert most_general_within(db, "dog", "canine", Pos.NOUN, 1) == "canine"
        assert most_general_within(db, "canine", "dog", Pos.NOUN, 1) == "canine"
        assert most_general_within(db, "cat", "entity", Pos.NOUN, 3) is None
        assert most_general_within(db, "dog", "dog", Pos.NOUN, 0) == "dog"

    def test_depth_counts_edges(self, db):
        assert most_general_within(db, "dog", "canine", Pos.NOUN, 0) is None
        assert most_general_within(db, "carmine", "red", Pos.NOUN, 4) == "red"

    def test_synonym_tie_break(self, db):
        assert most_general_within(db, "car", "automobile", Pos.NOUN, 0) == "car"
        assert most_general_within(db, "automobile", "car", Pos.NOUN, 0) == "car"

    def test_negative_depth(self, db):
        with pytest.raises(ValueError):
            most_general_within(db, "dog", "cat", Pos.NOUN, -1)

    def test_symmetric_and_monotone(self, db):
        for pos, words in ((Pos.NOUN, NOUNS), (Pos.VERB, VERBS)):
            for i, a in enumerate(words):
                for b in words[i + 1:]:
                    previous = None
                    for depth in range(6):
                        got = most_general_within(db, a, b, pos, depth)
                        assert got == most_general_within(db, b, a, pos, depth), (a, b, depth)
                        if previous is not None:
                            assert got == previous, (a, b, depth)
                        previous = got

    def test_lexicon_wrapper(self, db):
        lex = WordNetLexicon(db)
        assert lex.are_synonyms("car", "automobile", Pos.NOUN)
        assert lex.most_general_within("dog", "canine", Pos.NOUN, 1) == "canine"


class TestStubLexicon:
    def test_hypernym(self):
        lex = StubLexicon(hypernyms={"B": "A"})
        assert lex.most_general_within("A", "B", depth=1) == "A"
        assert lex.most_general_within("B", "A", depth=1) == "A"
        assert lex.most_general_within("A", "B", depth=0) is None

    def test_distances(self):
        lex = StubLexicon(hypernyms={"dog": [("animal", 3)]})
        assert lex.most_general_within("dog", "animal", depth=2) is None
        assert lex.most_general_within("dog", "animal", depth=3) == "animal"

    def test_chain(self):
        lex = StubLexicon(hypernyms={"a": "b", "b": "c"})
        assert lex.most_general_within("a", "c", depth=2) == "c"
        assert lex.most_general_within("a", "c", depth=1) is None

    def test_synonym_group_order(self):
        lex = StubLexicon(synonyms=[("y", "x")])
        assert lex.most_general_within("x", "y") == "y"
        assert lex.are_synonyms("x", "y") and lex.are_synonyms("y", "x")

    def test_empty(self):
        lex = EmptyLexicon()
        assert lex.most_general_within("a", "b", depth=9) is None
        assert lex.most_general_within("a", "a") == "a"

    @settings(max_examples=50)
    @given(st.dictionaries(st.sampled_from("abcdef"), st.sampled_from("abcdef"), max_size=5),
           st.sampled_from("abcdef"), st.sampled_from("abcdef"), st.integers(0, 4))
    def test_symmetric(self, edges, a, b, depth):
        edges = {k: v for k, v in edges.items() if k != v}
        lex = StubLexicon(hypernyms=edges)
        assert lex.most_general_within(a, b, depth=depth) == lex.most_general_within(b, a, depth=depth)
