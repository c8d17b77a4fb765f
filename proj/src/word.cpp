#include "cmpoisson/word.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cmpoisson {

char letter_char(Letter l) {
    switch (l) {
        case Letter::A: return 'A';
        case Letter::B: return 'B';
        case Letter::X: return 'X';
        case Letter::Y: return 'Y';
    }
    return '?';
}

Word::Word(const std::vector<Run>& runs) {
    for (const auto& run : runs) append(run.letter, run.exponent);
}

Word Word::from_letters(const std::vector<Letter>& letters) {
    Word w;
    for (Letter l : letters) w.append(l, 1);
    return w;
}

std::size_t Word::length() const {
    std::size_t n = 0;
    for (const auto& run : runs_) n += run.exponent;
    return n;
}

Bidegree Word::bidegree() const {
    Bidegree d;
    for (const auto& run : runs_) (is_first(run.letter) ? d.first : d.second) += run.exponent;
    return d;
}

std::vector<Letter> Word::letters() const {
    std::vector<Letter> flat;
    flat.reserve(length());
    for (const auto& run : runs_) flat.insert(flat.end(), run.exponent, run.letter);
    return flat;
}

void Word::append(Letter l, int exponent) {
    if (exponent < 0) throw std::invalid_argument("negative exponent in word");
    if (exponent == 0) return;
    if (!runs_.empty() && runs_.back().letter == l) {
        runs_.back().exponent = static_cast<std::uint16_t>(runs_.back().exponent + exponent);
    } else {
        runs_.push_back({l, static_cast<std::uint16_t>(exponent)});
    }
}

void Word::append(const Word& other) {
    for (const auto& run : other.runs_) append(run.letter, run.exponent);
}

std::size_t least_rotation(const std::vector<Letter>& s) {
    const std::size_t n = s.size();
    if (n == 0) return 0;
    // Booth's algorithm on the doubled sequence.
    std::vector<long> f(2 * n, -1);
    std::size_t k = 0;
    auto at = [&](std::size_t i) { return s[i % n]; };
    for (std::size_t j = 1; j < 2 * n; ++j) {
        Letter sj = at(j);
        long i = f[j - k - 1];
        while (i != -1 && sj != at(k + static_cast<std::size_t>(i) + 1)) {
            if (sj < at(k + static_cast<std::size_t>(i) + 1)) k = j - static_cast<std::size_t>(i) - 1;
            i = f[static_cast<std::size_t>(i)];
        }
        if (i == -1 && sj != at(k + static_cast<std::size_t>(i) + 1)) {
            if (sj < at(k + static_cast<std::size_t>(i) + 1)) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

CyclicWord canonicalize(const Word& word) { return CyclicWord(word); }

CyclicWord::CyclicWord(const Word& word) {
    const auto& runs = word.runs();
    if (runs.size() <= 1) {
        word_ = word;
        return;
    }
    std::vector<Letter> flat = word.letters();
    const std::size_t start = least_rotation(flat);
    std::rotate(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(start), flat.end());
    word_ = Word::from_letters(flat);
}

bool CyclicWord::is_single_letter(Letter l) const {
    const auto& r = runs();
    return r.size() == 1 && r[0].letter == l && r[0].exponent == 1;
}

bool CyclicWord::uses_central_letters() const {
    return std::any_of(runs().begin(), runs().end(),
                       [](const Run& r) { return r.letter == Letter::X || r.letter == Letter::Y; });
}

std::vector<SpliceTerm> splice_derivative(const CyclicWord& base, Letter letter) {
    const auto& runs = base.runs();
    std::map<Word, int> merged;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (runs[i].letter != letter) continue;
        const int e = runs[i].exponent;
        for (int offset = 0; offset < e; ++offset) {
            // Remove the occurrence at `offset` inside run i; read the cycle
            // starting right after it.
            Word cut;
            cut.append(letter, e - 1 - offset);
            for (std::size_t k = 1; k < runs.size(); ++k) {
                const Run& r = runs[(i + k) % runs.size()];
                cut.append(r.letter, r.exponent);
            }
            cut.append(letter, offset);
            ++merged[cut];
        }
    }
    std::vector<SpliceTerm> out;
    out.reserve(merged.size());
    for (auto& [w, m] : merged) out.push_back({w, m});
    return out;
}

std::string word_body(const Word& word) {
    std::string out;
    for (const auto& run : word.runs()) {
        if (!out.empty()) out += ' ';
        out += letter_char(run.letter);
        if (run.exponent != 1) out += "^" + std::to_string(run.exponent);
    }
    return out;
}

}  // namespace cmpoisson
