// Prints the letter features of stdin and, given a model file, its label.
//
//   classify_text [model.apvnet] [n] [ssm] < article.txt

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include "apvnet/apvnet.hpp"

int main(int argc, char** argv) {
  const std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};

  apvnet::PreprocessConfig config;
  config.supplement_n = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  config.ssm_enabled = argc > 3 && std::string(argv[3]) == "ssm";
  config.standard_vector = apvnet::default_standard_vector();

  try {
    const apvnet::FeatureVector f = apvnet::extract(text, config);
    for (std::size_t k = 0; k < apvnet::kAlphabetSize; ++k) {
      std::printf("%c %+.6f\n", static_cast<char>('a' + k), f[k]);
    }
    if (argc > 1) {
      std::ifstream in(argv[1], std::ios::binary);
      const apvnet::MlpModel model = apvnet::load_model(in);
      const double p = apvnet::forward_one(model, apvnet::row_span(f));
      std::printf("label %d (p = %.4f)\n", p >= 0.5 ? 1 : 0, p);
    }
  } catch (const apvnet::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  return 0;
}
