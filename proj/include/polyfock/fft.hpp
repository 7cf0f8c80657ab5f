#pragma once

#include <complex>
#include <cstddef>
#include <memory>

namespace polyfock {

/// In-place complex FFT of fixed length backed by FFTW. Plans are created under a
/// global lock; `execute` is safe to call concurrently on distinct buffers.
class FftPlan {
 public:
  FftPlan(std::size_t length, bool inverse);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t length() const { return length_; }
  void execute(std::complex<double>* data) const;

 private:
  std::size_t length_;
  void* plan_;
};

/// 16-byte aligned scratch buffer suitable for FftPlan::execute.
class FftBuffer {
 public:
  explicit FftBuffer(std::size_t length);
  ~FftBuffer();
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;

  std::complex<double>* data() { return data_; }
  std::complex<double>& operator[](std::size_t i) { return data_[i]; }
  std::size_t size() const { return length_; }

 private:
  std::size_t length_;
  std::complex<double>* data_;
};

std::size_t next_pow2(std::size_t n);

}  // namespace polyfock
