#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cmpoisson {

/// Matrix letters. A, B are the traceless parts of X, Y. In traceless mode the
/// letters X, Y only occur as the central factors tr X, tr Y.
enum class Letter : std::uint8_t { A = 0, B = 1, X = 2, Y = 3 };

/// First letters are A and X (bidegree slot 0), second letters are B and Y.
constexpr bool is_first(Letter l) { return l == Letter::A || l == Letter::X; }
constexpr int slot(Letter l) { return is_first(l) ? 0 : 1; }
char letter_char(Letter l);

struct Run {
    Letter letter;
    std::uint16_t exponent;

    friend auto operator<=>(const Run&, const Run&) = default;
    friend bool operator==(const Run&, const Run&) = default;
};

struct Bidegree {
    int first = 0;
    int second = 0;

    int total() const { return first + second; }
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

/// Linear word in run-length form. Adjacent runs alternate letters and every
/// exponent is positive; the empty word is the identity matrix.
class Word {
public:
    Word() = default;
    explicit Word(const std::vector<Run>& runs);
    static Word from_letters(const std::vector<Letter>& letters);

    const std::vector<Run>& runs() const { return runs_; }
    bool empty() const { return runs_.empty(); }
    std::size_t length() const;
    Bidegree bidegree() const;
    std::vector<Letter> letters() const;

    void append(Letter l, int exponent);
    void append(const Word& other);

    friend auto operator<=>(const Word&, const Word&) = default;
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Run> runs_;
};

/// Rotation class of a word, stored as its lexicographically least rotation
/// (letter order A < B < X < Y on the flat letter sequence). In this form the
/// first and last runs never share a letter unless the word is a single run.
class CyclicWord {
public:
    CyclicWord() = default;
    explicit CyclicWord(const Word& word);

    const Word& word() const { return word_; }
    const std::vector<Run>& runs() const { return word_.runs(); }
    bool empty() const { return word_.empty(); }
    Bidegree bidegree() const { return word_.bidegree(); }
    int degree() const { return bidegree().total(); }
    bool is_single_letter(Letter l) const;
    bool uses_central_letters() const;

    friend auto operator<=>(const CyclicWord&, const CyclicWord&) = default;
    friend bool operator==(const CyclicWord&, const CyclicWord&) = default;

private:
    Word word_;
};

CyclicWord canonicalize(const Word& word);

/// Index of the least rotation of a letter sequence (Booth).
std::size_t least_rotation(const std::vector<Letter>& letters);

/// One cut of a cyclic word at an occurrence of `letter`: the linear word read
/// from just after the removed letter around the cycle.
struct SpliceTerm {
    Word word;
    int multiplicity;
};

/// All cuts of `base` at occurrences of `letter`, duplicates merged. The
/// multiplicities add up to the total exponent of `letter` in `base`.
std::vector<SpliceTerm> splice_derivative(const CyclicWord& base, Letter letter);

/// Textual form of a word body, e.g. "A^2 B".
std::string word_body(const Word& word);

}  // namespace cmpoisson
