#pragma once

#include "gsig/common.hpp"

namespace gsig {

// Relative (minus-part) class number of the p-th cyclotomic field, computed
// two independent ways so downstream index checks never rest on a single
// derivation. Both accept odd primes p <= 200.

// |det M| / p^{(p-3)/2} for the (p-1)/2 square matrix of least positive
// residues M[a][b] = a*b' mod p with b*b' = 1 mod p.
Int h_minus_maillet(long p);

// 2p * prod over odd characters of (-B_{1,chi}/2), evaluated exactly in the
// cyclotomic field of order p-1 over the least primitive root mod p.
Int h_minus_bernoulli(long p);

struct ClassNumberResult {
    long p;
    Int h_minus;
    std::vector<std::string> methods;
};

// Runs both oracles and insists they agree.
ClassNumberResult h_minus(long p);

}  // namespace gsig
