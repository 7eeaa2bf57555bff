// Copyright 2026 The wexpand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WEXPAND_GATES_HPP
#define WEXPAND_GATES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "wexpand/state.hpp"

namespace wexpand {

/// Which tensor slot of a 4x4 gate acts as the control. Slot 0 ("first") is the most significant
/// factor, i.e. the `mode_a` argument of apply_2q.
enum class ControlSlot { kNone, kFirst, kSecond };

/// Dense row-major 2x2 or 4x4 complex matrix with a name.
class GateMatrix {
   public:
    GateMatrix(std::string name, std::size_t dim, std::vector<Amplitude> entries,
               ControlSlot control = ControlSlot::kNone);

    const std::string &name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return dim_; }
    ControlSlot control() const noexcept { return control_; }
    const std::vector<Amplitude> &entries() const noexcept { return entries_; }

    Amplitude operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }

    GateMatrix adjoint() const;
    GateMatrix renamed(std::string name) const;

   private:
    std::string name_;
    std::size_t dim_;
    std::vector<Amplitude> entries_;
    ControlSlot control_;
};

/// Matrix product a*b (b acts first). Dimensions must match.
GateMatrix operator*(const GateMatrix &a, const GateMatrix &b);

/// Kronecker product; `a` becomes the first (most significant) slot.
GateMatrix kron(const GateMatrix &a, const GateMatrix &b);

GateMatrix identity(std::size_t dim);
GateMatrix pauli_x();
GateMatrix pauli_z();
GateMatrix hadamard();

/// Half-wave plate at orientation theta: [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
/// hwp(pi/8) is the Hadamard gate and hwp(pi/16) is the F gate.
GateMatrix hwp(double theta);
GateMatrix f_gate();

/// CNOT with the control in the first slot.
GateMatrix cnot();
/// Controlled-Z (symmetric).
GateMatrix cz();

/// Controlled-Hadamard with the target in the first slot and the control in the second:
/// |a>|0> -> |a>|0>, |a>|1> -> (H|a>)|1>.
GateMatrix ch_direct();

/// Every gate the simulator defines, in a fixed order.
std::vector<GateMatrix> registered_gates();

/// max_ij |(G^dagger G - I)_ij| <= tol.
bool is_unitary(const GateMatrix &gate, double tol = kTolerance);

/// True iff some phase phi gives max |A - e^{i phi} B| <= tol. The phase is taken from the
/// largest-magnitude entry of B. Throws std::invalid_argument on a dimension mismatch.
bool equivalent_up_to_phase(const GateMatrix &a, const GateMatrix &b, double tol = kTolerance);

/// Largest entry deviation between A and B after aligning B's global phase as above.
double phase_aligned_distance(const GateMatrix &a, const GateMatrix &b);

/// One gate in a two-slot circuit. `slots` has one entry for 2x2 gates and two for 4x4 gates;
/// for a 4x4 gate slots[0] receives its first tensor factor.
struct CircuitStep {
    GateMatrix gate;
    std::vector<std::size_t> slots;
};

/// Time-ordered gate list on two slots (slot 0 most significant).
struct DecomposedCircuit {
    std::vector<CircuitStep> steps;

    std::size_t two_qubit_count() const;
    std::size_t single_qubit_count() const;
};

/// CH from one CNOT and half-wave plates on the target: F, H, CNOT(control -> target), H, F.
/// Slot 0 is the target and slot 1 the control, matching ch_direct().
DecomposedCircuit ch_decomposed();

/// Multiplies the steps into one 4x4 matrix.
GateMatrix compose(const DecomposedCircuit &circuit);

}  // namespace wexpand

#endif
