#ifndef COPY_H
# define COPY_H

enum backup_type
{
  no_backups,
  simple_backups,
  numbered_backups
};

struct cp_options
{
  enum backup_type backup_type;
  int move_mode;
  int interactive;
  int preserve_mode;
  int preserve_timestamps;
  int unlink_dest_before_opening;
  int unlink_dest_after_failed_open;
  int verbose;
};

int copy (char const *src_name, char const *dst_name,
          int nonexistent_dst, const struct cp_options *options,
          int *copy_into_self, int *rename_succeeded);

#endif
