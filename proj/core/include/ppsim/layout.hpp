#ifndef PPSIM_LAYOUT_HPP
#define PPSIM_LAYOUT_HPP

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ppsim::qlin {

/// Subsystem labels of the protocol Hilbert space: Bob's home qubit (h),
/// the travel qutrit (t) and Eve's two probe qutrits (x, y).
enum class Label : std::uint8_t { h, t, x, y };

char label_char(Label l);

struct Subsystem {
  Label label;
  int dim;
};

/// Ordered list of labeled subsystems. Basis indices are row-major over
/// this order, so the flat index of |h t x y> is ((h*3 + t)*3 + x)*3 + y
/// for the standard (h:2, t:3, x:3, y:3) layout.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(std::initializer_list<Subsystem> subsystems);
  explicit SubsystemLayout(std::vector<Subsystem> subsystems);

  /// The protocol's full (h:2, t:3, x:3, y:3) space, dimension 54.
  static SubsystemLayout standard();

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  std::size_t size() const { return subsystems_.size(); }
  long total_dim() const { return total_dim_; }

  bool contains(Label l) const;
  std::size_t position_of(Label l) const;  // throws if absent
  int dim_of(Label l) const;

  /// Row-major stride of the subsystem at position `pos`.
  long stride(std::size_t pos) const;

  /// Flat basis index from one digit per subsystem (layout order).
  long flat_index(const std::vector<int>& digits) const;

  bool operator==(const SubsystemLayout& other) const;
  bool operator!=(const SubsystemLayout& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  void validate() const;

  std::vector<Subsystem> subsystems_;
  long total_dim_ = 1;
};

/// Concatenation used by tensor products. Throws on label collision.
SubsystemLayout concat(const SubsystemLayout& a, const SubsystemLayout& b);

}  // namespace ppsim::qlin

#endif
