#ifndef PIEX_ERROR_H_
#define PIEX_ERROR_H_

#include <stdexcept>
#include <string>

namespace piex {

// Problem with user-supplied input: files, records, flag combinations.
// The CLI maps these to exit status 1.
class InputError : public std::runtime_error {
 public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed record in a line-oriented file. Carries the 1-based line number.
class FormatError : public InputError {
 public:
    FormatError(const std::string& file, std::size_t line, const std::string& what)
        : InputError(file + ":" + std::to_string(line) + ": " + what),
          file_(file), line_(line) {}

    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

 private:
    std::string file_;
    std::size_t line_;
};

}  // namespace piex

#endif  // PIEX_ERROR_H_
