// Copyright 2026 The unilat Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UNILAT_LINALG_HPP_
#define UNILAT_LINALG_HPP_

#include <vector>

#include "unilat/types.hpp"

namespace unilat {

using ZMat = std::vector<std::vector<BigInt>>;

ZMat to_zmat(const Mat& m);
// Throws kResourceCap if an entry does not fit in 64 bits.
Mat to_mat(const ZMat& m);

BigInt determinant(const Mat& m);

// Leading principal minors by fraction-free elimination without pivoting.
// Stops after the first non-positive minor.
std::vector<BigInt> leading_minors(const Mat& m);

// Row Hermite normal form of the lattice spanned by the rows of `gens`.
// Returns the nonzero rows, i.e. a basis of the row lattice.
ZMat hnf_rows(ZMat gens);

// Basis (as rows) of {x in Z^n : A x = 0}.
Mat integer_kernel(const Mat& a);

struct SmithForm {
  std::vector<BigInt> diag;  // ascending, each divides the next
  ZMat u;                    // U * A * V = diag(d)
  ZMat v;
  ZMat v_inv;
};

SmithForm smith_form(const Mat& a);

// det(G) * G^{-1}, exact.
Mat adjugate(const Mat& g);

// Inverse of an integer matrix with determinant +-1.
Mat inverse_unimodular(const Mat& m);

// Rank over Q.
int rank_q(const std::vector<Vec>& rows, int n);

// LLL reduction (delta 3/4) of a positive definite Gram matrix by exact
// integral arithmetic. `basis` receives the change of basis: its columns are
// the new basis vectors in old coordinates.
Mat lll_gram(const Mat& gram, Mat* basis);

}  // namespace unilat

#endif  // UNILAT_LINALG_HPP_
