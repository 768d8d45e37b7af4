#pragma once

#include "qreg/bench.hpp"
#include "qreg/bits.hpp"
#include "qreg/circuit.hpp"
#include "qreg/circuit_io.hpp"
#include "qreg/complex_matrix.hpp"
#include "qreg/errors.hpp"
#include "qreg/gates.hpp"
#include "qreg/grover.hpp"
#include "qreg/rng.hpp"
#include "qreg/routing.hpp"
#include "qreg/sat_oracle.hpp"
#include "qreg/simon.hpp"
#include "qreg/state_vector.hpp"
