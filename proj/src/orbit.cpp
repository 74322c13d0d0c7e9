#include "coverspectra/orbit.hpp"

#include <string>

#include "coverspectra/errors.hpp"

namespace coverspectra {

uint8_t OrbitView::digit(uint64_t i) const {
  if (i >= horizon_)
    throw Error(Errc::TruncatedOrbit,
                "digit index " + std::to_string(i) + " beyond horizon " +
                    std::to_string(horizon_));
  return digit_unchecked(i);
}

Word OrbitSample::window(uint64_t start, uint64_t len) const {
  if (start + len > digits.size())
    throw Error(Errc::TruncatedOrbit,
                "window [" + std::to_string(start) + ", " +
                    std::to_string(start + len) + ") beyond sampled orbit of " +
                    std::to_string(digits.size()) + " digits");
  return Word(std::vector<uint8_t>(digits.begin() + start,
                                   digits.begin() + start + len));
}

OrbitSample sample_orbit(const IfsSpec& spec, uint64_t horizon, uint64_t seed) {
  if (horizon == 0) throw Error(Errc::HorizonZero, "requested horizon 0");
  if (horizon > (uint64_t(1) << 31))
    throw Error(Errc::TooLarge, "refusing to materialize " +
                                    std::to_string(horizon) + " digits");
  OrbitView view(spec, seed, horizon);
  OrbitSample s;
  s.seed = seed;
  s.horizon = horizon;
  s.digits.resize(horizon);
  for (uint64_t i = 0; i < horizon; ++i) s.digits[i] = view.digit_unchecked(i);
  return s;
}

}  // namespace coverspectra
