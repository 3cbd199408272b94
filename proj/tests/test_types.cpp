#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rng.hpp"
#include "types.hpp"

using namespace livesum;

namespace {

Utterance utt(const std::string& id, double t_start, double t_end,
              const std::string& text = "xin chào") {
    Utterance u;
    u.id = id;
    u.text = text;
    u.t_start = t_start;
    u.t_end = t_end;
    return u;
}

Conversation conv(std::vector<Utterance> utterances) {
    Conversation c;
    c.id = "c1";
    c.utterances = std::move(utterances);
    return c;
}

bool has_defect(const ValidationReport& report, ConversationDefect defect) {
    for (const auto& finding : report.findings) {
        if (finding.defect == defect) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("conversation_span basic arithmetic") {
    auto single = conversation_span(conv({utt("u1", 0.0, 2.0)}));
    REQUIRE(single.ok());
    CHECK(*single == doctest::Approx(2.0));

    auto three = conversation_span(
        conv({utt("u1", 0.0, 2.0), utt("u2", 2.0, 5.0), utt("u3", 6.0, 9.0)}));
    REQUIRE(three.ok());
    CHECK(*three == doctest::Approx(9.0));

    auto offset = conversation_span(conv({utt("u1", 3.0, 4.0), utt("u2", 4.0, 8.0)}));
    REQUIRE(offset.ok());
    CHECK(*offset == doctest::Approx(5.0));
}

TEST_CASE("conversation_span rejects empty conversation") {
    auto result = conversation_span(conv({}));
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().code == ErrorCode::EmptyConversation);
}

TEST_CASE("validate_conversation accepts a well-formed conversation") {
    const auto report = validate_conversation(
        conv({utt("u1", 0.0, 2.0), utt("u2", 2.0, 4.0), utt("u3", 4.0, 6.0)}));
    CHECK(report.valid());
}

TEST_CASE("validate_conversation flags each defect") {
    SUBCASE("duplicate id") {
        const auto report =
            validate_conversation(conv({utt("u1", 0.0, 1.0), utt("u1", 1.0, 2.0)}));
        REQUIRE(report.findings.size() == 1);
        CHECK(report.findings[0].defect == ConversationDefect::DuplicateId);
    }
    SUBCASE("decreasing t_start") {
        const auto report =
            validate_conversation(conv({utt("u1", 5.0, 6.0), utt("u2", 3.0, 7.0)}));
        REQUIRE(report.findings.size() == 1);
        CHECK(report.findings[0].defect == ConversationDefect::NonMonotonicTime);
    }
    SUBCASE("empty text after tokenization") {
        const auto report = validate_conversation(conv({utt("u1", 0.0, 1.0, "?!,.")}));
        REQUIRE(report.findings.size() == 1);
        CHECK(report.findings[0].defect == ConversationDefect::EmptyText);
    }
    SUBCASE("bad time range") {
        const auto report = validate_conversation(conv({utt("u1", 2.0, 1.0)}));
        CHECK(has_defect(report, ConversationDefect::InvalidTimeRange));
    }
    SUBCASE("negative start") {
        const auto report = validate_conversation(conv({utt("u1", -1.0, 1.0)}));
        CHECK(has_defect(report, ConversationDefect::InvalidTimeRange));
    }
}

TEST_CASE("validate_conversation is pure") {
    const auto c = conv({utt("u1", 0.0, 1.0), utt("u1", 1.0, 2.0)});
    const auto a = validate_conversation(c);
    const auto b = validate_conversation(c);
    REQUIRE(a.findings.size() == b.findings.size());
    for (size_t i = 0; i < a.findings.size(); ++i) {
        CHECK(a.findings[i].defect == b.findings[i].defect);
        CHECK(a.findings[i].utterance_index == b.findings[i].utterance_index);
    }
}

// Acceptance flips exactly when an invariant is broken: start from a valid
// conversation, apply one random mutation, and check the report agrees with
// what the mutation did.
TEST_CASE("fuzz: random single mutations flip acceptance iff they break an invariant") {
    Rng rng(20240601);
    for (int round = 0; round < 500; ++round) {
        const size_t n = 2 + rng.next_index(6);
        std::vector<Utterance> utterances;
        double t = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double dur = 0.5 + rng.next_double() * 3.0;
            utterances.push_back(utt("u" + std::to_string(i), t, t + dur));
            t += dur;
        }
        Conversation c = conv(std::move(utterances));
        REQUIRE(validate_conversation(c).valid());

        const size_t victim = rng.next_index(n);
        const size_t mutation = rng.next_index(4);
        switch (mutation) {
            case 0:  // duplicate an id
                c.utterances[victim].id = c.utterances[(victim + 1) % n].id;
                break;
            case 1:  // wipe the text
                c.utterances[victim].text = " .. ";
                break;
            case 2:  // invert the time range
                std::swap(c.utterances[victim].t_start, c.utterances[victim].t_end);
                c.utterances[victim].t_end -= 0.1;
                break;
            case 3:  // push t_start before the previous turn
                if (victim == 0) continue;  // nothing to violate
                c.utterances[victim].t_start = c.utterances[victim - 1].t_start - 1.0;
                break;
        }
        const auto report = validate_conversation(c);
        CHECK_FALSE(report.valid());
    }
}
