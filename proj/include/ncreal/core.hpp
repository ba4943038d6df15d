#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ncreal/matrix.hpp"

namespace ncreal {

// Word in the free monoid on d letters. Letters are stored 0-based in memory;
// text and JSON formats use 1-based letters.
struct Word {
    std::vector<int> letters;

    std::size_t length() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    int operator[](std::size_t i) const { return letters[i]; }
    bool operator==(const Word& o) const = default;
    auto operator<=>(const Word& o) const = default;
};

Word transpose(const Word& w);
Word concat(const Word& a, const Word& b);
std::string to_string(const Word& w);

// All words of length 0..max_len, ordered by length then lexicographically.
std::vector<Word> all_words(std::size_t d, std::size_t max_len);
std::vector<Word> words_of_length(std::size_t d, std::size_t len);

// Level-m point over centre size n: d square matrices of side m*n.
class MatrixTuple {
public:
    MatrixTuple() = default;
    MatrixTuple(std::size_t base_n, std::size_t level_m, std::vector<ComplexMatrix> components);
    static MatrixTuple zeros(std::size_t base_n, std::size_t level_m, std::size_t d);

    std::size_t base_n() const { return n_; }
    std::size_t level_m() const { return m_; }
    std::size_t d() const { return comps_.size(); }
    std::size_t side() const { return n_ * m_; }

    const ComplexMatrix& operator[](std::size_t j) const { return comps_[j]; }
    ComplexMatrix& operator[](std::size_t j) { return comps_[j]; }
    const std::vector<ComplexMatrix>& components() const { return comps_; }

    MatrixTuple operator-(const MatrixTuple& o) const;
    MatrixTuple operator+(const MatrixTuple& o) const;
    MatrixTuple scaled(Complex s) const;

    // The same matrices read as a level-1 point over centre size m*n.
    MatrixTuple as_centre() const;
    // The same matrices read as a level-(side/n) point over centre size n.
    MatrixTuple relevel(std::size_t n) const;

private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<ComplexMatrix> comps_;
};

// A centre is a level-1 tuple.
using CentrePoint = MatrixTuple;
void require_centre(const CentrePoint& y);

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& z);
MatrixTuple ampliate(const CentrePoint& y, std::size_t m);
// Largest singular value of the vertical stack of the components.
double column_norm(const MatrixTuple& x);
// Component j becomes S^{-1} X_j S.
MatrixTuple apply_similarity(const ComplexMatrix& s, const MatrixTuple& x);

// E_{pq} in C^{n x n}, indexed p * n + q.
std::vector<ComplexMatrix> matrix_units(std::size_t n);

}  // namespace ncreal
