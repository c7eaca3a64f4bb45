#include "acvass/semantics.hpp"

namespace acvass {

RatVector affine_image(const Transition& t, const RatVector& u, const Rational& alpha) {
    RatVector v = t.identity ? u : t.matrix * u;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(t.delta[i]) != 0) v[i] += alpha * t.delta[i];
    return v;
}

std::optional<Config> step(const Machine& m, const Config& cfg, const Rational& alpha, int t) {
    if (static_cast<int>(cfg.values.size()) != m.dim())
        throw UsageError("configuration dimension does not match machine");
    if (sgn(alpha) <= 0 || alpha > 1) throw UsageError("fraction outside (0,1]");
    const Transition& tr = m.transition(t);
    if (tr.from != cfg.state) return std::nullopt;
    RatVector v = affine_image(tr, cfg.values, alpha);
    if (!all_nonnegative(v)) return std::nullopt;
    return Config{tr.to, std::move(v)};
}

RunResult run(const Machine& m, const Config& cfg, const FiringSequence& seq) {
    RunResult r;
    r.trace.push_back(cfg);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        auto next = step(m, r.trace.back(), seq[i].alpha, seq[i].transition);
        if (!next) {
            r.failed_step = static_cast<int>(i);
            return r;
        }
        r.trace.push_back(std::move(*next));
    }
    r.ok = true;
    return r;
}

void check_chain(const Machine& m, const FiringSequence& seq) {
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (m.transition(seq[i - 1].transition).to != m.transition(seq[i].transition).from)
            throw UsageError("firing sequence does not chain at step " + std::to_string(i));
}

RatVector marking_eval(const Machine& m, const RatVector& u, const FiringSequence& seq) {
    check_chain(m, seq);
    if (static_cast<int>(u.size()) != m.dim()) throw UsageError("vector dimension does not match machine");
    const int n = m.dim();
    const std::size_t l = seq.size();
    // suffix[j] = A_l ... A_{j+1}  (1-based j), suffix[l] = I
    std::vector<IntMatrix> suffix(l + 1, identity(n));
    for (std::size_t j = l; j-- > 0;) {
        const Transition& t = m.transition(seq[j].transition);
        suffix[j] = t.identity ? suffix[j + 1] : product(suffix[j + 1], t.matrix);
    }
    RatVector v = suffix[0] * u;
    for (std::size_t j = 0; j < l; ++j) {
        const Transition& t = m.transition(seq[j].transition);
        RatVector b(n);
        for (int i = 0; i < n; ++i) b[i] = seq[j].alpha * t.delta[i];
        RatVector pb = suffix[j + 1] * b;
        for (int i = 0; i < n; ++i) v[i] += pb[i];
    }
    return v;
}

FiringSequence rep_half(const FiringSequence& seq) {
    FiringSequence out = seq;
    Rational scale = 1;
    for (auto& s : out) {
        scale /= 2;
        s.alpha *= scale;
    }
    return out;
}

FiringSequence scale_seq(const Rational& beta, const FiringSequence& seq) {
    if (sgn(beta) <= 0 || beta > 1) throw UsageError("scale factor outside (0,1]");
    FiringSequence out = seq;
    for (auto& s : out) s.alpha *= beta;
    return out;
}

}  // namespace acvass
