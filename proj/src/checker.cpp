#include "asub/checker.hpp"

#include <chrono>

namespace asub {

const char* to_string(VerdictValue v) {
    switch (v) {
        case VerdictValue::True: return "true";
        case VerdictValue::False: return "false";
        case VerdictValue::Unknown: return "unknown";
    }
    return "?";
}

const char* to_string(UnknownCause c) {
    switch (c) {
        case UnknownCause::LimitHit: return "LimitHit";
        case UnknownCause::SuccessfulLeafInside: return "SuccessfulLeafInside";
        case UnknownCause::AncestorOutside: return "AncestorOutside";
        case UnknownCause::NotWitness: return "NotWitness";
    }
    return "?";
}

std::string DirectionReport::label(NodeId n, std::size_t max_chars) const {
    return simulator().label_string(tree[n].label, max_chars);
}

std::string DirectionReport::summary() const {
    std::string s = std::string(dual ? "dual" : "direct") + ": " + to_string(value);
    s += " (" + std::to_string(tree.size()) + " nodes";
    if (value == VerdictValue::False) {
        const SimNode& f = tree[tree.failure_node];
        s += "; failure at n" + std::to_string(tree.failure_node) + " [" + label(tree.failure_node) +
             "]: " + to_string(*f.failure);
    } else {
        s += "; " + std::to_string(extraction.candidates.size()) + " candidate(s)";
        if (!extraction.candidates.empty()) {
            s += " rooted at";
            for (const auto& c : extraction.candidates) s += " n" + std::to_string(c.root);
        }
    }
    if (cause) {
        s += "; cause ";
        s += to_string(*cause);
        if (*cause == UnknownCause::NotWitness) {
            for (std::size_t i = 0; i < witness.size(); ++i)
                if (!witness[i].ok) {
                    s += " (candidate n" + std::to_string(extraction.candidates[i].root) + ": " +
                         to_string(*witness[i].failure) + ", " + witness[i].detail + ")";
                    break;
                }
        } else if (*cause != UnknownCause::LimitHit) {
            s += " at n" + std::to_string(extraction.problem_node);
        }
    }
    return s + ")";
}

DirectionReport check_direction(const Machine& sub, const Machine& sup, const BuildOptions& opts,
                                bool dual) {
    const auto t0 = std::chrono::steady_clock::now();
    DirectionReport r;
    r.dual = dual;
    r.sub = std::make_shared<const Machine>(sub);
    r.sup = std::make_shared<const Machine>(sup);
    r.store = std::make_shared<TreeStore>();
    Simulator sim = r.simulator();
    r.tree = build(sim, opts);

    auto done = [&](VerdictValue v, std::optional<UnknownCause> cause = std::nullopt) {
        r.value = v;
        r.cause = cause;
        r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return std::move(r);
    };

    if (r.tree.outcome == BuildOutcome::FailureFound) return done(VerdictValue::False);
    if (r.tree.outcome == BuildOutcome::LimitHit) return done(VerdictValue::Unknown, UnknownCause::LimitHit);

    r.anc = assign_ancestors(r.tree);
    r.extraction = extract_candidates(r.tree, r.anc);
    if (r.extraction.problem == ExtractionProblem::SuccessfulLeafInside)
        return done(VerdictValue::Unknown, UnknownCause::SuccessfulLeafInside);
    if (r.extraction.problem == ExtractionProblem::AncestorOutside)
        return done(VerdictValue::Unknown, UnknownCause::AncestorOutside);

    bool all = true;
    for (const CandidateSubtree& c : r.extraction.candidates) {
        r.witness.push_back(is_witness(sim, r.tree, c));
        if (!r.witness.back().ok) {
            all = false;
            break;
        }
    }
    return all ? done(VerdictValue::True) : done(VerdictValue::Unknown, UnknownCause::NotWitness);
}

Verdict check(const Machine& m1, const Machine& m2, const CheckOptions& opts) {
    Verdict v;
    if (opts.mode != DirectionMode::Dual) {
        v.runs.push_back(check_direction(m1, m2, opts.build, false));
        if (v.runs.back().value != VerdictValue::Unknown) {
            v.value = v.runs.back().value;
            v.decided_by = 0;
            return v;
        }
        if (opts.mode == DirectionMode::Direct) return v;
    }
    v.runs.push_back(check_direction(dual(m2), dual(m1), opts.build, true));
    if (v.runs.back().value != VerdictValue::Unknown) {
        v.value = v.runs.back().value;
        v.decided_by = v.runs.size() - 1;
    }
    return v;
}

std::string Verdict::evidence() const {
    std::string s;
    for (const auto& r : runs) s += r.summary() + "\n";
    return s;
}

}  // namespace asub
