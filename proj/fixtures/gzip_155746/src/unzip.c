/* unzip.c -- decompress files in gzip or pkzip format */

#include <config.h>
#include <stdio.h>
#include "gzip.h"

/* Inflate IN to OUT and check the trailing crc and length. */
int
unzip (int in, int out)
{
  unsigned long orig_crc = 0;
  unsigned long orig_len = 0;
  int res;

  updcrc (NULL, 0);
  res = inflate ();
  if (res != 0)
    {
      error ("invalid compressed data--format violated");
      return ERROR;
    }
  orig_crc = get_long ();
  orig_len = get_long ();
  if (orig_crc != updcrc (outbuf, 0))
    {
      error ("invalid compressed data--crc error");
      return ERROR;
    }
  return OK;
}
