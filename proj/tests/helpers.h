#pragma once

#include <cstdint>
#include <cstring>
#include <random>
#include <string>

// Bitmap rows written as 64-character strings, '_' for 0, index 0 is the
// least significant bit (byte 0 of the block).
inline uint64_t mask_from_row(const char *row) {
  uint64_t mask = 0;
  for (int i = 0; i < 64; i++)
    if (row[i] != '_')
      mask |= 1ULL << i;
  return mask;
}

inline std::string row_from_mask(uint64_t mask) {
  std::string row(64, '_');
  for (int i = 0; i < 64; i++)
    if (mask >> i & 1)
      row[i] = '1';
  return row;
}

// 64-byte input line shared by the worked stage-1 examples
inline const char *kExampleBlock =
    R"({ "\\\"Nam[{": [ 116,"\\\\" , 234, "true", false ], "t":"\\\"" })";

// image-metadata document shared by the tape and navigation tests
inline const char *kExampleDocument = R"({
	"Width": 800,
	"Height": 600,
	"Title": "View from my room",
	"Url": "http://ex.com/img.png",
	"Private": false,
	"Thumbnail": {
		"Url": "http://ex.com/th.png",
		"Height": 125,
		"Width": 100
	},
	"array": [
		116,
		943,
		234
	],
	"Owner": null
})";
