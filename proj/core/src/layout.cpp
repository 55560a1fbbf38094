#include "ppsim/layout.hpp"

#include <sstream>
#include <stdexcept>

namespace ppsim::qlin {

char label_char(Label l) {
  switch (l) {
    case Label::h: return 'h';
    case Label::t: return 't';
    case Label::x: return 'x';
    case Label::y: return 'y';
  }
  return '?';
}

SubsystemLayout::SubsystemLayout(std::initializer_list<Subsystem> subsystems)
    : SubsystemLayout(std::vector<Subsystem>(subsystems)) {}

SubsystemLayout::SubsystemLayout(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
  validate();
  for (const auto& s : subsystems_) total_dim_ *= s.dim;
}

SubsystemLayout SubsystemLayout::standard() {
  return SubsystemLayout{{Label::h, 2}, {Label::t, 3}, {Label::x, 3}, {Label::y, 3}};
}

void SubsystemLayout::validate() const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].dim < 2) {
      throw std::invalid_argument("subsystem dimension must be at least 2");
    }
    for (std::size_t j = i + 1; j < subsystems_.size(); ++j) {
      if (subsystems_[i].label == subsystems_[j].label) {
        throw std::invalid_argument(std::string("duplicate subsystem label '") +
                                    label_char(subsystems_[i].label) + "'");
      }
    }
  }
}

bool SubsystemLayout::contains(Label l) const {
  for (const auto& s : subsystems_) {
    if (s.label == l) return true;
  }
  return false;
}

std::size_t SubsystemLayout::position_of(Label l) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].label == l) return i;
  }
  throw std::invalid_argument(std::string("unknown subsystem label '") + label_char(l) + "'");
}

int SubsystemLayout::dim_of(Label l) const { return subsystems_[position_of(l)].dim; }

long SubsystemLayout::stride(std::size_t pos) const {
  long s = 1;
  for (std::size_t i = pos + 1; i < subsystems_.size(); ++i) s *= subsystems_[i].dim;
  return s;
}

long SubsystemLayout::flat_index(const std::vector<int>& digits) const {
  if (digits.size() != subsystems_.size()) {
    throw std::invalid_argument("digit count does not match layout");
  }
  long idx = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= subsystems_[i].dim) {
      throw std::invalid_argument("basis digit out of range");
    }
    idx = idx * subsystems_[i].dim + digits[i];
  }
  return idx;
}

bool SubsystemLayout::operator==(const SubsystemLayout& other) const {
  if (subsystems_.size() != other.subsystems_.size()) return false;
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].label != other.subsystems_[i].label ||
        subsystems_[i].dim != other.subsystems_[i].dim) {
      return false;
    }
  }
  return true;
}

std::string SubsystemLayout::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (i) os << ", ";
    os << label_char(subsystems_[i].label) << ':' << subsystems_[i].dim;
  }
  os << ')';
  return os.str();
}

SubsystemLayout concat(const SubsystemLayout& a, const SubsystemLayout& b) {
  std::vector<Subsystem> joined = a.subsystems();
  for (const auto& s : b.subsystems()) {
    if (a.contains(s.label)) {
      throw std::invalid_argument(std::string("label collision on '") +
                                  label_char(s.label) + "' in tensor product");
    }
    joined.push_back(s);
  }
  return SubsystemLayout(std::move(joined));
}

}  // namespace ppsim::qlin
