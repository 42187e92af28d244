// Hopf-axiom verification on generators and degree-2 normal monomials.

#pragma once

#include <string>
#include <vector>

#include "qcartan/instance.hpp"
#include "qcartan/report.hpp"

namespace qcartan {

inline Report verify_hopf_axioms(const Instance& A) {
    Report rep;
    std::vector<Word> words = A.normal_words(1);
    for (const Word& w : A.normal_words(2)) words.push_back(w);

    auto record = [&](const std::string& name, bool ok, const std::string& witness) {
        CheckResult r;
        r.name = name;
        r.pass = ok;
        if (!ok) r.witness = witness;
        rep.checks.push_back(std::move(r));
    };

    for (const Word& w : words) {
        AlgebraElement x = AlgebraElement::monomial(w, QScalar(1));
        std::string wn = A.word_to_string(w);
        TensorElement dx = A.coproduct(x);

        record("coassociativity[" + wn + "]", A.coproduct_left(dx) == A.coproduct_right(dx), wn);
        record("counit-left[" + wn + "]", A.counit_left(dx) == x, wn);
        record("counit-right[" + wn + "]", A.counit_right(dx) == x, wn);

        AlgebraElement eps_x = AlgebraElement::unit().scaled(A.counit(x));
        record("antipode-left[" + wn + "]",
               A.antipode_left_leg(dx, Instance::AntipodeDir::S) == eps_x, wn);
        record("antipode-right[" + wn + "]",
               A.antipode_right_leg(dx, Instance::AntipodeDir::S) == eps_x, wn);

        // Delta(S(x)) = sigma (S (x) S) Delta(x)
        record("antipode-coproduct[" + wn + "]",
               A.coproduct(A.antipode(x)) == A.antipode_both_flip(dx, Instance::AntipodeDir::S), wn);

        record("antipode-inverse[" + wn + "]",
               A.antipode(A.antipode(x), Instance::AntipodeDir::SInv) == x &&
                   A.antipode(A.antipode(x, Instance::AntipodeDir::SInv)) == x,
               wn);
    }
    return rep;
}

}  // namespace qcartan
